#include "gilbert/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gilbert {

namespace {

double pair_area(double s, double w_phi, double w_psi) {
    if (w_phi <= 0.0) return 0.0;
    if (w_psi >= w_phi) return 0.5 * s * w_phi * w_phi;
    return 0.5 * s * (2.0 * w_phi * w_psi - w_psi * w_psi);
}

}  // namespace

double expected_crossings(const std::vector<Angle>& angles, const std::vector<double>& nu,
                          const WeightVector& w, int phi_index) {
    int m = static_cast<int>(angles.size());
    if (phi_index < 0 || phi_index >= m) {
        throw std::invalid_argument("expected_crossings: unknown angle");
    }
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
        if (j == phi_index) continue;
        double s = std::abs(std::sin(angles[j].radians() - angles[phi_index].radians()));
        total += pair_area(s, w[phi_index], w[j]) * nu[j];
    }
    return total;
}

double expected_crossings(const ModelSpec& spec, const WeightVector& w, int phi_index) {
    return expected_crossings(spec.angles(), spec.nu_all(), w, phi_index);
}

double expected_crossings_double_sum(const ModelSpec& spec, const WeightVector& w,
                                     int phi_index) {
    int m = spec.num_angles();
    if (phi_index < 0 || phi_index >= m) {
        throw std::invalid_argument("expected_crossings: unknown angle");
    }
    std::vector<int> others;
    for (int j = 0; j < m; ++j) {
        if (j != phi_index) others.push_back(j);
    }
    const auto& angles = spec.angles();
    double total = 0.0;
    for (uint32_t mask = 1; mask < (1u << others.size()); ++mask) {
        std::vector<int> q;
        for (size_t b = 0; b < others.size(); ++b) {
            if (mask & (1u << b)) q.push_back(others[b]);
        }
        std::vector<int> q_phi = q;
        q_phi.push_back(phi_index);
        std::sort(q_phi.begin(), q_phi.end());
        double weight = spec.mu_of(q_phi) + spec.mu_of(q);
        if (weight <= 0.0) continue;
        for (int j : q) {
            double s = std::abs(std::sin(angles[j].radians() - angles[phi_index].radians()));
            total += pair_area(s, w[phi_index], w[j]) * weight;
        }
    }
    return total;
}

WeightVector solve_wstar(const std::vector<Angle>& angles, const std::vector<double>& nu) {
    int m = static_cast<int>(angles.size());
    if (m < 2) throw std::invalid_argument("solve_wstar: need at least two angles");
    for (int i = 0; i < m; ++i) {
        if (nu[i] <= 0.0) {
            throw std::invalid_argument("solve_wstar: every angle must carry motorcycles");
        }
        double seen = 0.0;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            double s = std::abs(std::sin(angles[j].radians() - angles[i].radians()));
            if (s > 1e-12) seen += nu[j];
        }
        if (seen <= 0.0) {
            throw std::invalid_argument(
                "solve_wstar: no-parallel-line assumption violated for some direction");
        }
    }

    WeightVector w;
    w.w.assign(m, 0.0);
    std::vector<bool> fixed(m, false);
    constexpr int kMaxStages = 200;
    constexpr double kIncrementTol = 1e-13;
    constexpr double kFixTol = 1e-10;

    double base = 0.0;  // shared value of the not-yet-fixed coordinates
    for (int stage = 0; stage < kMaxStages; ++stage) {
        std::vector<int> unfixed;
        for (int i = 0; i < m; ++i) {
            if (!fixed[i]) unfixed.push_back(i);
        }
        if (unfixed.empty()) break;

        auto stage_max = [&](double c) {
            for (int i : unfixed) w.w[i] = base + c;
            double mx = 0.0;
            for (int i : unfixed) mx = std::max(mx, expected_crossings(angles, nu, w, i));
            return mx;
        };

        double hi = std::max(1.0, base);
        int guard = 0;
        while (stage_max(hi) < 1.0) {
            hi *= 2.0;
            if (++guard > 200) {
                throw std::runtime_error("solve_wstar: no finite fixed point (modeling bug?)");
            }
        }
        double lo = 0.0;
        while (hi - lo > kIncrementTol) {
            double mid = 0.5 * (lo + hi);
            if (stage_max(mid) < 1.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        double c = 0.5 * (lo + hi);
        stage_max(c);
        base += c;
        int newly = 0;
        for (int i : unfixed) {
            if (expected_crossings(angles, nu, w, i) >= 1.0 - kFixTol) {
                fixed[i] = true;
                ++newly;
            }
        }
        if (newly == 0) {
            throw std::runtime_error("solve_wstar: stage fixed no coordinate (tolerance bug?)");
        }
    }
    for (int i = 0; i < m; ++i) {
        if (!fixed[i]) throw std::runtime_error("solve_wstar: did not converge in stage budget");
        if (std::abs(expected_crossings(angles, nu, w, i) - 1.0) > 1e-10) {
            throw std::runtime_error("solve_wstar: residual above tolerance");
        }
    }
    return w;
}

WeightVector solve_wstar(const ModelSpec& spec) {
    spec.require_valid();
    return solve_wstar(spec.angles(), spec.nu_all());
}

LineProcessSpec limit_measure(const std::vector<Angle>& angles, const std::vector<double>& nu,
                              const WeightVector& w) {
    LineProcessSpec lp;
    for (size_t i = 0; i < angles.size(); ++i) {
        lp.entries.push_back({angles[i], w.w[i] * nu[i]});
    }
    return lp;
}

LineProcessSpec limit_measure(const ModelSpec& spec, const WeightVector& w) {
    return limit_measure(spec.angles(), spec.nu_all(), w);
}

TropicalLineConstants tropical_line_constants(double lambda) {
    double mu_rect = std::pow(2.0, 0.75) / std::sqrt(1.0 + std::sqrt(2.0)) * std::sqrt(lambda);
    double mu_diag = (std::sqrt(2.0) + 3.0) / 4.0 * mu_rect;
    return {mu_rect, mu_diag};
}

FaceCounts rectangle_face_census(long n_a, long n_b, long n_c) {
    if (n_a < 0 || n_b < 0 || n_c < 0) {
        throw std::invalid_argument("rectangle_face_census: negative counts");
    }
    FaceCounts out;
    long n = n_a + n_b + n_c;
    if (n == 0) {
        out.quads = 1;
        return out;
    }
    // Chords sorted A-block, B-block, C-block across the rectangle. The
    // leftmost face is cut by the first chord, the rightmost by the last;
    // interior faces sit between consecutive chords.
    bool first_a = n_a > 0;
    bool first_c = n_a == 0 && n_b == 0 && n_c > 0;
    bool last_c = n_c > 0;
    bool last_a = n_c == 0 && n_b == 0 && n_a > 0;
    out.triangles = (first_a ? 1 : 0) + (last_c ? 1 : 0);
    out.hexagons = (n_a > 0 && n_b == 0 && n_c > 0) ? 1 : 0;
    out.pentagons = (first_c ? 1 : 0) + (last_a ? 1 : 0) + ((n_a > 0 && n_b > 0) ? 1 : 0) +
                    ((n_b > 0 && n_c > 0) ? 1 : 0);
    out.quads = (n + 1) - out.triangles - out.pentagons - out.hexagons;
    return out;
}

FaceExpectation face_expectation(double a, double b, double c) {
    double ea = std::exp(-a), eb = std::exp(-b), ec = std::exp(-c);
    double u = -std::expm1(-a), v = -std::expm1(-b), t = -std::expm1(-c);
    FaceExpectation e;
    e.tri = u + t;
    e.hex = u * eb * t;
    e.pent = u * v + v * t + ea * eb * t + eb * ec * u;
    e.quad = (1.0 + a + b + c) - e.tri - e.pent - e.hex;
    return e;
}

namespace {

// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    int mhalf = (n + 1) / 2;
    for (int i = 0; i < mhalf; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        double xm = 0.5, xl = 0.5;  // map [-1,1] -> [0,1]
        x[i] = xm - xl * z;
        x[n - 1 - i] = xm + xl * z;
        w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

struct TriplePi {
    double p3, p5, p6;
};

// p_i for i in {3,5,6} after u = exp(-mu*x), v = exp(-mu*y) and splitting the
// unit square along the min/|diff| kink at u = v (v = u*tau on one half, times
// two by symmetry). The remaining integrands depend on (u, tau) only through
// u^gamma and tau^gamma.
TriplePi integrate_triple(double mu_rect, double gamma, int nodes) {
    std::vector<double> x, w;
    gauss_legendre_01(nodes, x, w);
    double s3 = 0.0, s5 = 0.0, s6 = 0.0;
    for (int i = 0; i < nodes; ++i) {
        double u = x[i];
        double ug = std::pow(u, gamma);   // exp(-a), a = c
        double bigu = 1.0 - ug;
        double inner3 = 0.0, inner5 = 0.0, inner6 = 0.0;
        for (int j = 0; j < nodes; ++j) {
            double tg = std::pow(x[j], gamma);  // exp(-b)
            double e_tri = 2.0 * bigu;
            double e_pent = 2.0 * bigu * (1.0 - tg) + 2.0 * bigu * ug * tg;
            double e_hex = bigu * bigu * tg;
            inner3 += w[j] * e_tri;
            inner5 += w[j] * e_pent;
            inner6 += w[j] * e_hex;
        }
        s3 += w[i] * u * inner3;
        s5 += w[i] * u * inner5;
        s6 += w[i] * u * inner6;
    }
    double scale = 2.0 * mu_rect * mu_rect;
    return {scale * s3, scale * s5, scale * s6};
}

}  // namespace

double PolytropeDensities::sum() const {
    double s = 0.0;
    for (const auto& [k, v] : p) s += v;
    return s;
}

double PolytropeDensities::weighted_sum() const {
    double s = 0.0;
    for (const auto& [k, v] : p) s += k * v;
    return s;
}

PolytropeDensities polytrope_densities_integral(double mu_rect, double mu_diag,
                                                const QuadOptions& opts) {
    if (mu_rect <= 0.0 || mu_diag < 0.0) {
        throw std::invalid_argument("polytrope_densities_integral: invalid intensities");
    }
    double gamma = mu_diag / (std::sqrt(2.0) * mu_rect);
    double total = mu_rect * mu_rect + std::sqrt(2.0) * mu_rect * mu_diag;  // exact sum of p_i

    TriplePi a = integrate_triple(mu_rect, gamma, opts.nodes);
    TriplePi b = integrate_triple(mu_rect, gamma, opts.check_nodes);

    double p4a = total - a.p3 - a.p5 - a.p6;
    double p4b = total - b.p3 - b.p5 - b.p6;
    double err = std::abs(a.p3 - b.p3) + std::abs(a.p5 - b.p5) + std::abs(a.p6 - b.p6) +
                 std::abs(p4a - p4b);

    PolytropeDensities out;
    out.method = PolytropeDensities::Method::integral;
    out.error_estimate = err;
    out.p[3] = b.p3;
    out.p[4] = p4b;
    out.p[5] = b.p5;
    out.p[6] = b.p6;
    if (err > opts.max_error) {
        throw std::runtime_error("polytrope_densities_integral: quadrature error " +
                                 std::to_string(err) + " above tolerance");
    }
    return out;
}

double arm_body_mean(const ArmBodyInputs& in) {
    constexpr double kOrientTol = 1e-9;
    double m = 0.0;
    double rt2inv = 1.0 / std::sqrt(2.0);
    for (const auto& [orient_raw, len] : in.lengths) {
        if (len < 0.0) throw std::invalid_argument("arm_body_mean: negative length");
        double o = std::fmod(orient_raw, kPi);
        if (o < 0.0) o += kPi;
        double dm_ = in.d_horiz * in.mu_horiz;
        double dmv = in.d_vert * in.mu_vert;
        double dmd = in.d_diag * in.mu_diag;
        if (std::abs(o) <= kOrientTol || std::abs(o - kPi) <= kOrientTol) {
            m += len * (dmv + rt2inv * dmd);
        } else if (std::abs(o - kPi / 4.0) <= kOrientTol) {
            m += len * (rt2inv * dm_ + rt2inv * dmv);
        } else if (std::abs(o - kPi / 2.0) <= kOrientTol) {
            m += len * (dm_ + rt2inv * dmd);
        } else {
            m += len * (std::abs(std::sin(o - kPi / 2.0)) * dmv + std::abs(std::sin(o)) * dm_ +
                        std::abs(std::sin(o - kPi / 4.0)) * dmd);
        }
    }
    return in.lambda * m;
}

}  // namespace gilbert
