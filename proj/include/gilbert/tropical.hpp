#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gilbert/geom.hpp"
#include "gilbert/motorsim.hpp"
#include "gilbert/rng.hpp"

namespace gilbert {

// Min-plus polynomial min_{(i,j)} (c_ij + i*x + j*y) with finite support.
class TropPoly {
public:
    TropPoly() = default;
    explicit TropPoly(std::map<std::pair<int, int>, double> coeffs);

    const std::map<std::pair<int, int>, double>& coeffs() const { return coeffs_; }
    int degree() const { return degree_; }
    // Newton polygon equals the full triangle conv{(0,0),(d,0),(0,d)}.
    bool is_standard() const;
    double coefficient_spread() const;  // max pairwise difference of finite coeffs

    // Text format: one "i j c" line per monomial; '#' starts a comment.
    static TropPoly parse(const std::string& text);
    std::string format() const;

    static TropPoly tropical_line(double cx = 0.0, double cy = 0.0, double c0 = 0.0);

private:
    std::map<std::pair<int, int>, double> coeffs_;
    int degree_ = 0;
};

struct TropEval {
    double value = 0.0;
    std::vector<std::pair<int, int>> argmin;  // monomials within tie tolerance
    bool is_zero() const { return argmin.size() >= 2; }
};

TropEval trop_eval(const TropPoly& f, double x, double y, double tie_tol = 1e-9);

// Regular subdivision of -Newt(f): cells are projections of the lower-hull
// facets of the lifted points (-i, -j, c_ij). Coplanar lifts merge into one
// cell, so the trivial lift yields the one-cell subdivision.
struct SubdivCell {
    std::vector<std::pair<int, int>> hull;     // cell polygon vertices, convex order, (i,j) coords
    std::vector<std::pair<int, int>> members;  // all support points on the facet
    double gx = 0.0, gy = 0.0;                 // facet gradient = dual curve vertex
};

struct Subdivision {
    std::vector<SubdivCell> cells;
    int degree = 0;

    bool is_subdivision_vertex(int i, int j) const;  // vertex of some cell polygon
    bool is_member(int i, int j) const;              // on some facet
};

Subdivision regular_subdivision(const TropPoly& f);

enum class ArmDir { east = 0, north = 1, southwest = 2 };
Vec2 arm_unit(ArmDir d);
Angle arm_angle(ArmDir d);

struct TropArm {
    Vec2 apex;
    ArmDir dir = ArmDir::east;
    int mult = 1;
};

struct TropCurveEdge {
    Vec2 a, b;
    int mult = 1;
    std::pair<int, int> prim{1, 0};  // primitive integer direction of the edge
};

struct TropCurve {
    std::vector<Vec2> vertices;       // one per subdivision cell
    std::vector<TropCurveEdge> bounded_edges;
    std::vector<TropArm> arms;
    Subdivision subdivision;
    int degree = 0;
    double coeff_spread = 0.0;

    std::vector<Segment> body_segments() const;
    long arm_count(ArmDir d) const;  // counting multiplicity
};

TropCurve trop_curve(const TropPoly& f);

// Radius of the smallest ball containing the body.
double body_radius(const TropCurve& c);

// Stable intersection: c2 is shifted by a seeded generic offset of magnitude
// 1e-6*(1+radius) so all crossings are transversal. A crossing of facets with
// weights m1, m2 and primitive directions u1, u2 counts with multiplicity
// m1*m2*|det(u1,u2)|; the total is d1*d2. Throws after 3 degenerate re-draws.
struct StableIntersection {
    Vec2 point;
    long mult = 1;
};
std::vector<StableIntersection> stable_intersection(const TropCurve& c1, const TropCurve& c2,
                                                    uint64_t seed);

enum class CentroidKind { c1_min_y_horizontal_apex, c2_min_x_vertical_apex, mass_center };
Vec2 centroid(const TropCurve& c, CentroidKind kind);

// Law of random standard polynomials: degree uniform on `degrees`,
// coefficients i.i.d. uniform on [0, spread].
struct CurveLaw {
    std::vector<int> degrees{1, 2, 3};
    double spread = 1.0;
    TropPoly sample(RngStream& stream) const;
};

struct GermGrain {
    std::vector<Obstacle> obstacles;
    std::vector<Motorcycle> motorcycles;
    long germ_count = 0;
};

// Poisson germ points with i.i.d. curves: bodies become obstacles, arms become
// motorcycles (weight = multiplicity; same apex+direction arms merge).
GermGrain germ_grain(const CurveLaw& law, double lambda, const Rect& window, uint64_t seed,
                     int k_lives);

}  // namespace gilbert
