#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace gilbert {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Absolute tolerance for geometric coordinate comparisons.
inline constexpr double kGeomTol = 1e-9;
// Open-ray convention: a ray parameter t <= kRayOriginTol counts as "at the origin".
inline constexpr double kRayOriginTol = 1e-12;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double px, double py) : x(px), y(py) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }

    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dist(Vec2 a, Vec2 b) { return (a - b).norm(); }
inline bool near(Vec2 a, Vec2 b, double tol = kGeomTol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

// Direction in [0, 2*pi). Normalization is idempotent.
class Angle {
public:
    Angle() = default;
    explicit Angle(double radians) : rad_(normalize(radians)) {}

    double radians() const { return rad_; }
    Vec2 unit() const { return {std::cos(rad_), std::sin(rad_)}; }
    Angle perp() const { return Angle(rad_ + kPi / 2.0); }  // phi^perp = phi + pi/2

    static double normalize(double r) {
        r = std::fmod(r, kTwoPi);
        if (r < 0.0) r += kTwoPi;
        if (r >= kTwoPi) r = 0.0;
        return r;
    }

    bool operator==(const Angle& o) const { return rad_ == o.rad_; }
    bool operator<(const Angle& o) const { return rad_ < o.rad_; }

private:
    double rad_ = 0.0;
};

inline bool same_angle(const Angle& a, const Angle& b, double tol = 1e-12) {
    double d = std::abs(a.radians() - b.radians());
    return d <= tol || std::abs(d - kTwoPi) <= tol;
}

struct Segment {
    Vec2 a;
    Vec2 b;
    double length() const { return dist(a, b); }
    bool degenerate() const { return length() <= kGeomTol; }
    Vec2 midpoint() const { return {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5}; }
};

struct Rect {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double area() const { return width() * height(); }
    bool contains(Vec2 p) const {
        return p.x >= xmin && p.x < xmax && p.y >= ymin && p.y < ymax;
    }
    Rect grown(double m) const { return {xmin - m, ymin - m, xmax + m, ymax + m}; }
    std::array<Vec2, 4> corners() const {
        return {Vec2{xmin, ymin}, Vec2{xmax, ymin}, Vec2{xmax, ymax}, Vec2{xmin, ymax}};
    }
    static Rect square(double side) { return {0.0, 0.0, side, side}; }
    static Rect centered_square(double side) {
        return {-side / 2, -side / 2, side / 2, side / 2};
    }
};

// Width of the rectangle's projection onto the direction theta.
double projection_width(const Rect& w, const Angle& theta);

// First-arriving crossers region T^{w_phi,w_psi}_{phi psi}.
// Triangle when w_psi >= w_phi, a truncated trapezium otherwise.
struct KillRegion {
    enum class Kind { triangle, trapezium };
    Kind kind = Kind::triangle;
    std::vector<Vec2> vertices;  // convex cyclic order
    double w_phi = 0.0;
    double w_psi = 0.0;
    Angle phi;
    Angle psi;
};

// Throws std::invalid_argument when phi == psi (region undefined).
KillRegion kill_region(const Angle& phi, const Angle& psi, double w_phi, double w_psi);

// Closed form: |sin(psi-phi)|/2 * w_phi^2 (triangle),
//              |sin(psi-phi)|/2 * (2*w_phi*w_psi - w_psi^2) (trapezium).
double region_area(const KillRegion& r);

// Absolute polygon area; throws on fewer than 3 points.
double shoelace_area(std::span<const Vec2> pts);

// Signed area (CCW positive) of a closed polygon walk; no arity check.
double signed_area(std::span<const Vec2> pts);

bool point_in_convex_polygon(Vec2 p, std::span<const Vec2> poly, double tol = kGeomTol);

struct RayHit {
    Vec2 point;
    double t1 = 0.0;
    double t2 = 0.0;
};

// Intersection of the open rays {o + t*vec(phi), t > 0}; empty for parallel
// rays and for crossings at or behind either origin.
std::optional<RayHit> ray_intersection(Vec2 o1, const Angle& phi1, Vec2 o2, const Angle& phi2);

// Ray {o + t*dir, t > 0} against the closed segment s.
// Returns (t along ray, s in [0,1] along segment).
std::optional<RayHit> ray_segment_intersection(Vec2 o, Vec2 dir, const Segment& s);

// Parameter interval [0, t_exit] of the ray inside the box, assuming o inside.
// Returns 0 when the origin lies outside.
double ray_exit_distance(Vec2 o, Vec2 dir, const Rect& box);

// Closed-segment intersection; returns parameters (s on a, t on b), both in
// [0,1]. endpoint_slack (distance units) admits crossings that graze an
// endpoint by roundoff; parameters are clamped back into [0,1].
std::optional<RayHit> segment_intersection(const Segment& a, const Segment& b,
                                           double endpoint_slack = 0.0);

bool segment_intersects_rect(const Segment& s, const Rect& r);

// Smallest enclosing circle of a point set (exact for small inputs).
struct Circle {
    Vec2 center;
    double radius = 0.0;
};
Circle smallest_enclosing_circle(std::span<const Vec2> pts);

}  // namespace gilbert
