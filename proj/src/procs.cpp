#include "gilbert/procs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gilbert {

ModelSpec::ModelSpec(double lambda, std::vector<Angle> angles,
                     std::vector<double> multiplicity_probs,
                     std::vector<std::vector<AngleSetAtom>> angle_set_law)
    : lambda_(lambda),
      angles_(std::move(angles)),
      mult_probs_(std::move(multiplicity_probs)),
      law_(std::move(angle_set_law)) {
    if (lambda_ <= 0.0) throw std::invalid_argument("ModelSpec: lambda must be positive");
    int m = static_cast<int>(angles_.size());
    if (m < 1) throw std::invalid_argument("ModelSpec: empty angle list");
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (same_angle(angles_[i], angles_[j])) {
                throw std::invalid_argument("ModelSpec: duplicate angles");
            }
        }
    }
    if (static_cast<int>(mult_probs_.size()) != m || static_cast<int>(law_.size()) != m) {
        throw std::invalid_argument("ModelSpec: multiplicity law size mismatch");
    }
    double pi_total = 0.0;
    for (double p : mult_probs_) pi_total += p;
    if (std::abs(pi_total - 1.0) > 1e-12) {
        throw std::invalid_argument("ModelSpec: multiplicity probabilities must sum to 1");
    }
    for (int k = 0; k < m; ++k) {
        double mass = 0.0;
        for (const auto& atom : law_[k]) {
            if (static_cast<int>(atom.indices.size()) != k + 1) {
                throw std::invalid_argument("ModelSpec: atom arity mismatch");
            }
            if (!std::is_sorted(atom.indices.begin(), atom.indices.end()) ||
                std::adjacent_find(atom.indices.begin(), atom.indices.end()) !=
                    atom.indices.end()) {
                throw std::invalid_argument("ModelSpec: atom indices must be sorted distinct");
            }
            for (int idx : atom.indices) {
                if (idx < 0 || idx >= m) {
                    throw std::invalid_argument("ModelSpec: atom index out of range");
                }
            }
            mass += atom.prob;
        }
        if (mult_probs_[k] > 0.0 && std::abs(mass - 1.0) > 1e-12) {
            throw std::invalid_argument("ModelSpec: angle-set law must sum to 1 per multiplicity");
        }
    }
    // Flattened support with mu weights, and per-direction intensities.
    nu_.assign(m, 0.0);
    for (int k = 0; k < m; ++k) {
        if (mult_probs_[k] <= 0.0) continue;
        for (const auto& atom : law_[k]) {
            double mu = lambda_ * mult_probs_[k] * atom.prob;
            if (mu <= 0.0) continue;
            support_.push_back({atom.indices, mu});
            for (int idx : atom.indices) nu_[idx] += mu;
        }
    }
}

double ModelSpec::mu_of(const std::vector<int>& q) const {
    if (q.empty()) throw std::invalid_argument("mu_of: empty angle set");
    std::vector<int> key = q;
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end()) {
        throw std::invalid_argument("mu_of: repeated angle");
    }
    for (int idx : key) {
        if (idx < 0 || idx >= num_angles()) throw std::invalid_argument("mu_of: unknown angle");
    }
    int m = static_cast<int>(key.size());
    double pi_m = mult_probs_[m - 1];
    if (pi_m <= 0.0) return 0.0;
    for (const auto& atom : law_[m - 1]) {
        if (atom.indices == key) return lambda_ * pi_m * atom.prob;
    }
    return 0.0;
}

double ModelSpec::nu(int angle_index) const {
    if (angle_index < 0 || angle_index >= num_angles()) {
        throw std::invalid_argument("nu: unknown angle");
    }
    return nu_[angle_index];
}

double ModelSpec::mean_multiplicity() const {
    double em = 0.0;
    for (size_t k = 0; k < mult_probs_.size(); ++k) em += (k + 1.0) * mult_probs_[k];
    return em;
}

bool ModelSpec::no_parallel_line_ok() const {
    int m = num_angles();
    for (int i = 0; i < m; ++i) {
        if (nu_[i] <= 0.0) continue;
        for (int j = i + 1; j < m; ++j) {
            if (nu_[j] <= 0.0) continue;
            double d = std::abs(std::sin(angles_[i].radians() - angles_[j].radians()));
            if (d > 1e-12) return true;
        }
    }
    return false;
}

bool ModelSpec::mosaic_grade() const {
    if (mult_probs_[0] > 0.0) return false;  // isolated sites
    for (const auto& e : support_) {
        // Sorted circular gaps between the tuple's directions must be <= pi.
        std::vector<double> a;
        for (int idx : e.indices) a.push_back(angles_[idx].radians());
        std::sort(a.begin(), a.end());
        size_t n = a.size();
        for (size_t i = 0; i < n; ++i) {
            double gap = (i + 1 < n) ? a[i + 1] - a[i] : a[0] + kTwoPi - a[n - 1];
            if (gap > kPi + 1e-12) return false;
        }
    }
    return true;
}

void ModelSpec::require_valid() const {
    if (!no_parallel_line_ok()) {
        throw std::invalid_argument(
            "ModelSpec: no-parallel-line assumption violated; dynamics may not terminate");
    }
}

ModelSpec ModelSpec::tropical_lines(double lambda) {
    std::vector<Angle> a{Angle(0.0), Angle(kPi / 2.0), Angle(5.0 * kPi / 4.0)};
    std::vector<double> pi{0.0, 0.0, 1.0};
    std::vector<std::vector<AngleSetAtom>> law(3);
    law[2] = {{{0, 1, 2}, 1.0}};
    return ModelSpec(lambda, std::move(a), std::move(pi), std::move(law));
}

ModelSpec ModelSpec::rectangular(double lambda) {
    std::vector<Angle> a{Angle(0.0), Angle(kPi / 2.0), Angle(kPi), Angle(3.0 * kPi / 2.0)};
    std::vector<double> pi{0.0, 0.0, 0.0, 1.0};
    std::vector<std::vector<AngleSetAtom>> law(4);
    law[3] = {{{0, 1, 2, 3}, 1.0}};
    return ModelSpec(lambda, std::move(a), std::move(pi), std::move(law));
}

ModelSpec ModelSpec::single_tuple(double lambda, std::vector<Angle> angles) {
    int m = static_cast<int>(angles.size());
    std::vector<double> pi(m, 0.0);
    pi[m - 1] = 1.0;
    std::vector<std::vector<AngleSetAtom>> law(m);
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i;
    law[m - 1] = {{all, 1.0}};
    return ModelSpec(lambda, std::move(angles), std::move(pi), std::move(law));
}

namespace {

constexpr uint64_t kStreamSiteCount = 1;
constexpr uint64_t kStreamSites = 2;
constexpr uint64_t kStreamLines = 3;

int pick_discrete(const std::vector<double>& probs, double u) {
    double acc = 0.0;
    int last = 0;
    for (size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0) last = static_cast<int>(i);
        acc += probs[i];
        if (u <= acc && probs[i] > 0.0) return static_cast<int>(i);
    }
    return last;
}

}  // namespace

SitePattern sample_sites(const ModelSpec& spec, const Rect& window, uint64_t seed) {
    if (window.area() <= 0.0) throw std::invalid_argument("sample_sites: empty window");
    CounterRng rng(seed);
    RngStream count_stream(rng, kStreamSiteCount);
    long n = count_stream.poisson(spec.lambda() * window.area());

    // Per-multiplicity atom tables: support entries grouped by |Q|, with the
    // conditional probabilities A^m restored from the mu weights.
    int m = spec.num_angles();
    std::vector<std::vector<const ModelSpec::SupportEntry*>> atoms(m);
    std::vector<std::vector<double>> atom_probs(m);
    std::vector<double> pi(m, 0.0);
    double pi_total = 0.0;
    for (const auto& e : spec.support()) {
        int k = static_cast<int>(e.indices.size()) - 1;
        atoms[k].push_back(&e);
        pi[k] += e.mu;
    }
    for (int k = 0; k < m; ++k) pi_total += pi[k];
    if (pi_total <= 0.0) throw std::invalid_argument("sample_sites: model has no supported marks");
    for (int k = 0; k < m; ++k) {
        for (const auto* e : atoms[k]) atom_probs[k].push_back(e->mu / pi[k]);
        pi[k] /= pi_total;
    }

    SitePattern out;
    out.window = window;
    out.spec = &spec;
    out.sites.reserve(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
        // Fixed stream order per site: x, y, multiplicity, angle tuple.
        uint64_t base = static_cast<uint64_t>(i) * 4;
        double x = window.xmin + window.width() * rng.uniform(kStreamSites, base + 0);
        double y = window.ymin + window.height() * rng.uniform(kStreamSites, base + 1);
        int mult = pick_discrete(pi, rng.uniform(kStreamSites, base + 2));
        int atom = pick_discrete(atom_probs[mult], rng.uniform(kStreamSites, base + 3));
        out.sites.push_back({{x, y}, atoms[mult][atom]->indices});
    }
    return out;
}

double LineProcessSpec::total_intensity() const {
    double t = 0.0;
    for (const auto& e : entries) t += e.intensity;
    return t;
}

double LineProcessSpec::theta_mass(int entry_index) const {
    double t = total_intensity();
    if (t <= 0.0) return 0.0;
    return entries[entry_index].intensity / t;
}

std::vector<Line> sample_line_process(const LineProcessSpec& lp, const Rect& window,
                                      uint64_t seed) {
    CounterRng rng(seed);
    std::vector<Line> lines;
    for (size_t d = 0; d < lp.entries.size(); ++d) {
        const auto& e = lp.entries[d];
        if (e.intensity <= 0.0) continue;
        Vec2 perp = e.phi.perp().unit();
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (Vec2 c : window.corners()) {
            double v = dot(c, perp);
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        RngStream s(rng, mix64(kStreamLines, d));
        long n = s.poisson(e.intensity * (hi - lo));
        for (long i = 0; i < n; ++i) {
            lines.push_back({e.phi, s.uniform(lo, hi)});
        }
    }
    return lines;
}

Segment clip_line(const Line& l, const Rect& box) {
    Vec2 dir = l.dir.unit();
    Vec2 p0 = l.offset * l.dir.perp().unit();
    // Clip p0 + t*dir to the box over t in R.
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    auto clip1 = [&](double d, double lo, double hi, double o) {
        if (std::abs(d) < 1e-15) return o >= lo && o <= hi;
        double ta = (lo - o) / d, tb = (hi - o) / d;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        return true;
    };
    if (!clip1(dir.x, box.xmin, box.xmax, p0.x) || !clip1(dir.y, box.ymin, box.ymax, p0.y) ||
        t0 >= t1) {
        return Segment{p0, p0};
    }
    return Segment{p0 + t0 * dir, p0 + t1 * dir};
}

}  // namespace gilbert
