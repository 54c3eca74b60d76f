#include "gilbert/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gilbert {

TropPoly::TropPoly(std::map<std::pair<int, int>, double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("TropPoly: empty support");
    for (const auto& [ij, c] : coeffs_) {
        if (ij.first < 0 || ij.second < 0) {
            throw std::invalid_argument("TropPoly: negative exponent");
        }
        if (!std::isfinite(c)) throw std::invalid_argument("TropPoly: non-finite coefficient");
        degree_ = std::max(degree_, ij.first + ij.second);
    }
}

bool TropPoly::is_standard() const {
    if (degree_ < 1) return false;
    return coeffs_.count({0, 0}) && coeffs_.count({degree_, 0}) && coeffs_.count({0, degree_});
}

double TropPoly::coefficient_spread() const {
    double lo = coeffs_.begin()->second, hi = lo;
    for (const auto& [ij, c] : coeffs_) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return hi - lo;
}

TropPoly TropPoly::parse(const std::string& text) {
    std::map<std::pair<int, int>, double> coeffs;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        int i, j;
        double c;
        if (ls >> i >> j >> c) coeffs[{i, j}] = c;
    }
    return TropPoly(std::move(coeffs));
}

std::string TropPoly::format() const {
    std::ostringstream out;
    for (const auto& [ij, c] : coeffs_) {
        out << ij.first << " " << ij.second << " " << c << "\n";
    }
    return out.str();
}

TropPoly TropPoly::tropical_line(double cx, double cy, double c0) {
    return TropPoly({{{1, 0}, cx}, {{0, 1}, cy}, {{0, 0}, c0}});
}

TropEval trop_eval(const TropPoly& f, double x, double y, double tie_tol) {
    TropEval out;
    out.value = std::numeric_limits<double>::infinity();
    for (const auto& [ij, c] : f.coeffs()) {
        double v = c + ij.first * x + ij.second * y;
        out.value = std::min(out.value, v);
    }
    for (const auto& [ij, c] : f.coeffs()) {
        double v = c + ij.first * x + ij.second * y;
        if (v <= out.value + tie_tol) out.argmin.push_back(ij);
    }
    return out;
}

bool Subdivision::is_subdivision_vertex(int i, int j) const {
    for (const auto& cell : cells) {
        for (const auto& v : cell.hull) {
            if (v.first == i && v.second == j) return true;
        }
    }
    return false;
}

bool Subdivision::is_member(int i, int j) const {
    for (const auto& cell : cells) {
        for (const auto& v : cell.members) {
            if (v.first == i && v.second == j) return true;
        }
    }
    return false;
}

namespace {

// Strict convex hull (collinear points are not vertices), lattice input.
std::vector<std::pair<int, int>> lattice_hull(std::vector<std::pair<int, int>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    if (n <= 2) return pts;
    auto cross_l = [](std::pair<int, int> o, std::pair<int, int> a, std::pair<int, int> b) {
        return static_cast<long>(a.first - o.first) * (b.second - o.second) -
               static_cast<long>(a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<int, int>> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross_l(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross_l(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;  // counterclockwise
}

long lattice_area2(const std::vector<std::pair<int, int>>& poly) {
    long acc = 0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        auto a = poly[i];
        auto b = poly[(i + 1) % n];
        acc += static_cast<long>(a.first) * b.second - static_cast<long>(a.second) * b.first;
    }
    return std::abs(acc);
}

}  // namespace

Subdivision regular_subdivision(const TropPoly& f) {
    if (!f.is_standard()) {
        throw std::invalid_argument("regular_subdivision: polynomial is not standard");
    }
    struct Lifted {
        int i, j;
        double x, y, h;
    };
    std::vector<Lifted> pts;
    double scale = 1.0;
    for (const auto& [ij, c] : f.coeffs()) {
        pts.push_back({ij.first, ij.second, -static_cast<double>(ij.first),
                       -static_cast<double>(ij.second), c});
        scale = std::max(scale, std::abs(c));
    }
    const double tol = 1e-9 * scale;
    size_t n = pts.size();

    struct Plane {
        double a, b, d;  // h = a*x + b*y + d on lifted coordinates
    };
    std::vector<Plane> planes;
    auto have_plane = [&](const Plane& p) {
        for (const auto& q : planes) {
            if (std::abs(p.a - q.a) < 1e-7 && std::abs(p.b - q.b) < 1e-7 &&
                std::abs(p.d - q.d) < 1e-7 * scale) {
                return true;
            }
        }
        return false;
    };

    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            for (size_t k = j + 1; k < n; ++k) {
                double ax = pts[j].x - pts[i].x, ay = pts[j].y - pts[i].y;
                double bx = pts[k].x - pts[i].x, by = pts[k].y - pts[i].y;
                double det = ax * by - ay * bx;
                if (std::abs(det) < 0.5) continue;  // lattice: non-collinear => |det| >= 1
                double dh1 = pts[j].h - pts[i].h, dh2 = pts[k].h - pts[i].h;
                double pa = (dh1 * by - dh2 * ay) / det;
                double pb = (dh2 * ax - dh1 * bx) / det;
                double pd = pts[i].h - pa * pts[i].x - pb * pts[i].y;
                bool lower = true;
                for (size_t s = 0; s < n && lower; ++s) {
                    double val = pts[s].h - (pa * pts[s].x + pb * pts[s].y + pd);
                    if (val < -tol) lower = false;
                }
                if (!lower) continue;
                Plane p{pa, pb, pd};
                if (!have_plane(p)) planes.push_back(p);
            }
        }
    }

    Subdivision out;
    out.degree = f.degree();
    for (const auto& p : planes) {
        SubdivCell cell;
        cell.gx = p.a;
        cell.gy = p.b;
        for (const auto& s : pts) {
            double val = s.h - (p.a * s.x + p.b * s.y + p.d);
            if (std::abs(val) <= tol) cell.members.push_back({s.i, s.j});
        }
        cell.hull = lattice_hull(cell.members);
        if (cell.hull.size() >= 3) out.cells.push_back(std::move(cell));
    }

    // The cells must tile -Newt(f); catches tolerance failures early.
    long area2 = 0;
    for (const auto& c : out.cells) area2 += lattice_area2(c.hull);
    if (area2 != static_cast<long>(f.degree()) * f.degree()) {
        throw std::runtime_error("regular_subdivision: cells do not tile the Newton polygon");
    }
    return out;
}

Vec2 arm_unit(ArmDir d) {
    switch (d) {
        case ArmDir::east: return {1.0, 0.0};
        case ArmDir::north: return {0.0, 1.0};
        case ArmDir::southwest: return {-std::sqrt(0.5), -std::sqrt(0.5)};
    }
    return {1.0, 0.0};
}

Angle arm_angle(ArmDir d) {
    switch (d) {
        case ArmDir::east: return Angle(0.0);
        case ArmDir::north: return Angle(kPi / 2.0);
        case ArmDir::southwest: return Angle(5.0 * kPi / 4.0);
    }
    return Angle(0.0);
}

std::vector<Segment> TropCurve::body_segments() const {
    std::vector<Segment> out;
    for (const auto& e : bounded_edges) out.push_back({e.a, e.b});
    return out;
}

long TropCurve::arm_count(ArmDir d) const {
    long total = 0;
    for (const auto& a : arms) {
        if (a.dir == d) total += a.mult;
    }
    return total;
}

TropCurve trop_curve(const TropPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("trop_curve: degree must be >= 1");
    TropCurve curve;
    curve.subdivision = regular_subdivision(f);
    curve.degree = f.degree();
    curve.coeff_spread = f.coefficient_spread();
    const auto& cells = curve.subdivision.cells;
    for (const auto& c : cells) curve.vertices.push_back({c.gx, c.gy});

    // Shared hull edges: interior -> bounded curve edge, boundary -> arm.
    struct EdgeUse {
        std::pair<int, int> a, b;
        int cell;
    };
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, std::vector<int>> uses;
    for (size_t ci = 0; ci < cells.size(); ++ci) {
        const auto& hull = cells[ci].hull;
        size_t m = hull.size();
        for (size_t e = 0; e < m; ++e) {
            auto p = hull[e];
            auto q = hull[(e + 1) % m];
            auto key = p < q ? std::make_pair(p, q) : std::make_pair(q, p);
            uses[key].push_back(static_cast<int>(ci));
        }
    }
    int d = f.degree();
    for (const auto& [key, cs] : uses) {
        auto [p, q] = key;
        int mult = std::gcd(std::abs(p.first - q.first), std::abs(p.second - q.second));
        if (cs.size() == 2) {
            // The curve edge is perpendicular to the dual lattice edge.
            int g = std::max(mult, 1);
            std::pair<int, int> prim{-(q.second - p.second) / g, (q.first - p.first) / g};
            curve.bounded_edges.push_back(
                {curve.vertices[cs[0]], curve.vertices[cs[1]], mult, prim});
            continue;
        }
        if (cs.size() != 1) {
            throw std::runtime_error("trop_curve: subdivision edge shared by >2 cells");
        }
        ArmDir dir;
        if (p.first == 0 && q.first == 0) {
            dir = ArmDir::east;
        } else if (p.second == 0 && q.second == 0) {
            dir = ArmDir::north;
        } else if (p.first + p.second == d && q.first + q.second == d) {
            dir = ArmDir::southwest;
        } else {
            throw std::runtime_error("trop_curve: boundary edge not on the Newton triangle");
        }
        curve.arms.push_back({curve.vertices[cs[0]], dir, mult});
    }

    // Arms sharing apex and direction merge into one motorcycle-like mark.
    std::vector<TropArm> merged;
    for (const auto& a : curve.arms) {
        bool done = false;
        for (auto& m : merged) {
            if (m.dir == a.dir && near(m.apex, a.apex, 1e-9)) {
                m.mult += a.mult;
                done = true;
                break;
            }
        }
        if (!done) merged.push_back(a);
    }
    curve.arms = std::move(merged);
    return curve;
}

double body_radius(const TropCurve& c) {
    if (c.vertices.empty()) return 0.0;
    return smallest_enclosing_circle(c.vertices).radius;
}

namespace {

struct Facet {
    Vec2 a;       // segment start or ray apex
    Vec2 b;       // segment end (ignored for rays)
    Vec2 dir;     // ray direction (rays only)
    bool ray = false;
    int mult = 1;
    std::pair<int, int> prim{1, 0};
};

std::pair<int, int> arm_prim(ArmDir d) {
    switch (d) {
        case ArmDir::east: return {1, 0};
        case ArmDir::north: return {0, 1};
        case ArmDir::southwest: return {-1, -1};
    }
    return {1, 0};
}

std::vector<Facet> curve_facets(const TropCurve& c, Vec2 shift) {
    std::vector<Facet> out;
    for (const auto& e : c.bounded_edges) {
        if (dist(e.a, e.b) <= 1e-12) continue;
        out.push_back({e.a + shift, e.b + shift, {}, false, e.mult, e.prim});
    }
    for (const auto& a : c.arms) {
        out.push_back({a.apex + shift, {}, arm_unit(a.dir), true, a.mult, arm_prim(a.dir)});
    }
    return out;
}

// Transversal crossing of two facets; sets `degenerate` when the crossing is
// too close to an endpoint/apex or the facets overlap collinearly.
std::optional<Vec2> facet_cross(const Facet& f, const Facet& g, double clear,
                                bool& degenerate) {
    Vec2 df = f.ray ? f.dir : f.b - f.a;
    Vec2 dg = g.ray ? g.dir : g.b - g.a;
    double denom = cross(df, dg);
    Vec2 delta = g.a - f.a;
    if (std::abs(denom) < 1e-12 * std::max(1.0, df.norm() * dg.norm())) {
        // Parallel: collinear overlap is degenerate, disjoint lines are fine.
        double off = cross(delta, df) / std::max(df.norm(), 1e-30);
        if (std::abs(off) < clear) degenerate = true;
        return std::nullopt;
    }
    double t = cross(delta, dg) / denom;
    double u = cross(delta, df) / denom;
    double flen = f.ray ? std::numeric_limits<double>::infinity() : 1.0;
    double glen = g.ray ? std::numeric_limits<double>::infinity() : 1.0;
    if (t < 0.0 || t > flen || u < 0.0 || u > glen) {
        // Near-miss at an endpoint still counts as degenerate.
        double slackf = clear / std::max(df.norm(), 1e-30);
        double slackg = clear / std::max(dg.norm(), 1e-30);
        if (t > -slackf && t < flen + slackf && u > -slackg && u < glen + slackg) {
            degenerate = true;
        }
        return std::nullopt;
    }
    double end_f = std::min(t, flen - t) * df.norm();
    double end_g = std::min(u, glen - u) * dg.norm();
    if (end_f < clear || end_g < clear) {
        degenerate = true;
        return std::nullopt;
    }
    return f.a + t * df;
}

}  // namespace

std::vector<StableIntersection> stable_intersection(const TropCurve& c1, const TropCurve& c2,
                                                    uint64_t seed) {
    double mag = 1e-6 * (1.0 + body_radius(c2));
    auto facets1 = curve_facets(c1, {0, 0});
    for (int attempt = 0; attempt < 3; ++attempt) {
        RngStream s(seed, static_cast<uint64_t>(attempt) + 1);
        double theta = kTwoPi * s.uniform();
        Vec2 shift{mag * std::cos(theta), mag * std::sin(theta)};
        auto facets2 = curve_facets(c2, shift);
        std::vector<StableIntersection> out;
        bool degenerate = false;
        for (const auto& f : facets1) {
            for (const auto& g : facets2) {
                auto p = facet_cross(f, g, 1e-9, degenerate);
                if (degenerate) break;
                if (p) {
                    long det = std::abs(static_cast<long>(f.prim.first) * g.prim.second -
                                        static_cast<long>(f.prim.second) * g.prim.first);
                    out.push_back({*p, static_cast<long>(f.mult) * g.mult * det});
                }
            }
            if (degenerate) break;
        }
        if (!degenerate) return out;
    }
    throw std::runtime_error("stable_intersection: persistent degeneracy after 3 re-draws");
}

Vec2 centroid(const TropCurve& c, CentroidKind kind) {
    if (kind == CentroidKind::mass_center) {
        double total = 0.0;
        Vec2 acc{0, 0};
        for (const auto& e : c.bounded_edges) {
            double len = dist(e.a, e.b);
            acc += len * Vec2{(e.a.x + e.b.x) / 2, (e.a.y + e.b.y) / 2};
            total += len;
        }
        if (total > 1e-12) return acc * (1.0 / total);
        Vec2 mean{0, 0};
        for (const auto& v : c.vertices) mean += v;
        return mean * (1.0 / std::max<size_t>(1, c.vertices.size()));
    }
    ArmDir want = kind == CentroidKind::c1_min_y_horizontal_apex ? ArmDir::east : ArmDir::north;
    const TropArm* best = nullptr;
    for (const auto& a : c.arms) {
        if (a.dir != want) continue;
        if (!best) {
            best = &a;
            continue;
        }
        double ka = kind == CentroidKind::c1_min_y_horizontal_apex ? a.apex.y : a.apex.x;
        double kb = kind == CentroidKind::c1_min_y_horizontal_apex ? best->apex.y : best->apex.x;
        if (ka < kb - 1e-12 ||
            (std::abs(ka - kb) <= 1e-12 &&
             std::make_pair(a.apex.x, a.apex.y) < std::make_pair(best->apex.x, best->apex.y))) {
            best = &a;
        }
    }
    if (!best) throw std::runtime_error("centroid: curve has no arm of the requested type");
    return best->apex;
}

TropPoly CurveLaw::sample(RngStream& stream) const {
    if (degrees.empty() || spread < 0.0) throw std::invalid_argument("CurveLaw: bad parameters");
    int d = degrees[static_cast<size_t>(stream.uniform() * degrees.size()) % degrees.size()];
    std::map<std::pair<int, int>, double> coeffs;
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; j <= d - i; ++j) {
            coeffs[{i, j}] = stream.uniform() * spread;
        }
    }
    return TropPoly(std::move(coeffs));
}

GermGrain germ_grain(const CurveLaw& law, double lambda, const Rect& window, uint64_t seed,
                     int k_lives) {
    if (window.area() <= 0.0) throw std::invalid_argument("germ_grain: empty window");
    CounterRng rng(seed);
    RngStream count_stream(rng, 21);
    long n = count_stream.poisson(lambda * window.area());
    GermGrain out;
    out.germ_count = n;
    int moto_id = 0;
    for (long g = 0; g < n; ++g) {
        double x = window.xmin + window.width() * rng.uniform(22, 2 * g);
        double y = window.ymin + window.height() * rng.uniform(22, 2 * g + 1);
        Vec2 pos{x, y};
        RngStream cs(rng, mix64(23, static_cast<uint64_t>(g)));
        TropPoly poly = law.sample(cs);
        if (poly.coefficient_spread() > law.spread + 1e-12) {
            throw std::runtime_error("germ_grain: sampled polynomial violates the spread bound");
        }
        TropCurve curve = trop_curve(poly);
        Obstacle ob;
        ob.complex_id = static_cast<int>(g);
        for (const auto& e : curve.bounded_edges) {
            if (dist(e.a, e.b) <= 1e-12) continue;
            ob.segments.push_back({e.a + pos, e.b + pos});
        }
        out.obstacles.push_back(std::move(ob));
        for (const auto& arm : curve.arms) {
            Motorcycle m;
            m.id = moto_id++;
            m.origin = arm.apex + pos;
            m.angle = arm_angle(arm.dir);
            m.lives_initial = k_lives;
            m.source_id = static_cast<int>(g);
            m.weight = arm.mult;
            out.motorcycles.push_back(m);
        }
    }
    return out;
}

}  // namespace gilbert
