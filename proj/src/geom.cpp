#include "gilbert/geom.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace gilbert {

double projection_width(const Rect& w, const Angle& theta) {
    Vec2 u = theta.unit();
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (Vec2 c : w.corners()) {
        double v = dot(c, u);
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi - lo;
}

KillRegion kill_region(const Angle& phi, const Angle& psi, double w_phi, double w_psi) {
    if (same_angle(phi, psi)) {
        throw std::invalid_argument("kill_region: identical angles, region undefined");
    }
    if (w_phi < 0.0 || w_psi < 0.0) {
        throw std::invalid_argument("kill_region: negative travel distance");
    }
    KillRegion r;
    r.phi = phi;
    r.psi = psi;
    r.w_phi = w_phi;
    r.w_psi = w_psi;
    Vec2 vphi = phi.unit();
    Vec2 vpsi = psi.unit();
    if (w_psi < w_phi) {
        r.kind = KillRegion::Kind::trapezium;
        // Affine image of the parameter square corners, in convex cyclic order.
        r.vertices = {
            -w_phi * vphi,
            Vec2{0.0, 0.0},
            -w_psi * vpsi,
            (w_psi - w_phi) * vphi - w_psi * vpsi,
        };
    } else {
        r.kind = KillRegion::Kind::triangle;
        r.vertices = {
            -w_phi * vphi,
            Vec2{0.0, 0.0},
            -w_phi * vpsi,
        };
    }
    return r;
}

double region_area(const KillRegion& r) {
    double s = std::abs(std::sin(r.psi.radians() - r.phi.radians()));
    if (r.kind == KillRegion::Kind::triangle) {
        return 0.5 * s * r.w_phi * r.w_phi;
    }
    return 0.5 * s * (2.0 * r.w_phi * r.w_psi - r.w_psi * r.w_psi);
}

double signed_area(std::span<const Vec2> pts) {
    double acc = 0.0;
    size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 a = pts[i];
        Vec2 b = pts[(i + 1) % n];
        acc += cross(a, b);
    }
    return 0.5 * acc;
}

double shoelace_area(std::span<const Vec2> pts) {
    if (pts.size() < 3) {
        throw std::invalid_argument("shoelace_area: need at least 3 points");
    }
    return std::abs(signed_area(pts));
}

bool point_in_convex_polygon(Vec2 p, std::span<const Vec2> poly, double tol) {
    size_t n = poly.size();
    if (n < 3) return false;
    double orient = signed_area(poly) >= 0.0 ? 1.0 : -1.0;
    for (size_t i = 0; i < n; ++i) {
        Vec2 a = poly[i];
        Vec2 b = poly[(i + 1) % n];
        if (orient * cross(b - a, p - a) < -tol) return false;
    }
    return true;
}

std::optional<RayHit> ray_intersection(Vec2 o1, const Angle& phi1, Vec2 o2, const Angle& phi2) {
    Vec2 d1 = phi1.unit();
    Vec2 d2 = phi2.unit();
    double c = cross(d1, d2);
    if (std::abs(c) < 1e-12) return std::nullopt;
    Vec2 delta = o2 - o1;
    double t1 = cross(delta, d2) / c;
    double t2 = cross(delta, d1) / c;
    if (t1 <= kRayOriginTol || t2 <= kRayOriginTol) return std::nullopt;
    return RayHit{o1 + t1 * d1, t1, t2};
}

std::optional<RayHit> ray_segment_intersection(Vec2 o, Vec2 dir, const Segment& s) {
    Vec2 e = s.b - s.a;
    double c = cross(dir, e);
    if (std::abs(c) < 1e-14) return std::nullopt;
    Vec2 delta = s.a - o;
    double t = cross(delta, e) / c;
    double u = cross(delta, dir) / c;
    if (t <= kRayOriginTol) return std::nullopt;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    return RayHit{o + t * dir, t, u};
}

double ray_exit_distance(Vec2 o, Vec2 dir, const Rect& box) {
    if (o.x < box.xmin || o.x > box.xmax || o.y < box.ymin || o.y > box.ymax) return 0.0;
    double t = std::numeric_limits<double>::infinity();
    if (dir.x > 1e-15) t = std::min(t, (box.xmax - o.x) / dir.x);
    if (dir.x < -1e-15) t = std::min(t, (box.xmin - o.x) / dir.x);
    if (dir.y > 1e-15) t = std::min(t, (box.ymax - o.y) / dir.y);
    if (dir.y < -1e-15) t = std::min(t, (box.ymin - o.y) / dir.y);
    if (!std::isfinite(t)) return 0.0;
    return std::max(t, 0.0);
}

std::optional<RayHit> segment_intersection(const Segment& a, const Segment& b,
                                           double endpoint_slack) {
    Vec2 da = a.b - a.a;
    Vec2 db = b.b - b.a;
    double c = cross(da, db);
    if (std::abs(c) < 1e-14) return std::nullopt;
    Vec2 delta = b.a - a.a;
    double s = cross(delta, db) / c;
    double t = cross(delta, da) / c;
    double slack_s = endpoint_slack > 0.0 ? endpoint_slack / std::max(da.norm(), 1e-30) : 0.0;
    double slack_t = endpoint_slack > 0.0 ? endpoint_slack / std::max(db.norm(), 1e-30) : 0.0;
    if (s < -slack_s || s > 1.0 + slack_s || t < -slack_t || t > 1.0 + slack_t) {
        return std::nullopt;
    }
    s = std::clamp(s, 0.0, 1.0);
    t = std::clamp(t, 0.0, 1.0);
    return RayHit{a.a + s * da, s, t};
}

bool segment_intersects_rect(const Segment& s, const Rect& r) {
    // Liang-Barsky clip.
    double t0 = 0.0, t1 = 1.0;
    double dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
    auto clip = [&](double p, double q) {
        if (std::abs(p) < 1e-15) return q >= 0.0;
        double t = q / p;
        if (p < 0.0) {
            if (t > t1) return false;
            t0 = std::max(t0, t);
        } else {
            if (t < t0) return false;
            t1 = std::min(t1, t);
        }
        return true;
    };
    return clip(-dx, s.a.x - r.xmin) && clip(dx, r.xmax - s.a.x) &&
           clip(-dy, s.a.y - r.ymin) && clip(dy, r.ymax - s.a.y) && t0 <= t1;
}

namespace {

Circle circle_from(Vec2 a, Vec2 b) {
    Vec2 c{(a.x + b.x) / 2, (a.y + b.y) / 2};
    return {c, dist(a, b) / 2};
}

std::optional<Circle> circle_from(Vec2 a, Vec2 b, Vec2 c) {
    double d = 2.0 * cross(b - a, c - a);
    if (std::abs(d) < 1e-14) return std::nullopt;
    double a2 = a.norm2(), b2 = b.norm2(), c2 = c.norm2();
    double ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    double uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    Vec2 center{ux, uy};
    return Circle{center, dist(center, a)};
}

bool covers(const Circle& c, std::span<const Vec2> pts, double tol) {
    for (Vec2 p : pts) {
        if (dist(c.center, p) > c.radius + tol) return false;
    }
    return true;
}

}  // namespace

Circle smallest_enclosing_circle(std::span<const Vec2> pts) {
    if (pts.empty()) return {};
    if (pts.size() == 1) return {pts[0], 0.0};
    const double tol = 1e-9;
    Circle best{{}, std::numeric_limits<double>::infinity()};
    size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            Circle c = circle_from(pts[i], pts[j]);
            if (c.radius < best.radius && covers(c, pts, tol)) best = c;
        }
    }
    if (std::isfinite(best.radius)) return best;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            for (size_t k = j + 1; k < n; ++k) {
                auto c = circle_from(pts[i], pts[j], pts[k]);
                if (c && c->radius < best.radius && covers(*c, pts, tol)) best = *c;
            }
        }
    }
    return best;
}

}  // namespace gilbert
