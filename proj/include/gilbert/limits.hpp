#pragma once

#include <map>
#include <vector>

#include "gilbert/geom.hpp"
#include "gilbert/procs.hpp"

namespace gilbert {

// Travel-distance weights, one entry per model angle (same index order).
struct WeightVector {
    std::vector<double> w;
    double operator[](int i) const { return w[i]; }
};

// Mean number of first-arriving crossers over a length w_phi path, collapsed
// over the mark law to per-direction intensities:
//   E(w, phi) = sum_{psi != phi} |T^{w_phi,w_psi}_{phi psi}| * nu_psi.
double expected_crossings(const std::vector<Angle>& angles, const std::vector<double>& nu,
                          const WeightVector& w, int phi_index);
double expected_crossings(const ModelSpec& spec, const WeightVector& w, int phi_index);

// Literal double sum over subsets Q of A \ {phi} with weights mu_{phi u Q} + mu_Q;
// algebraically equal to the collapsed form (asserted in tests).
double expected_crossings_double_sum(const ModelSpec& spec, const WeightVector& w,
                                     int phi_index);

// Unique positive w* with E(w*, phi) = 1 for every phi, found by the staircase:
// raise all not-yet-fixed coordinates uniformly until the running maximum of E
// reaches 1, fix the argmax coordinates, repeat.
WeightVector solve_wstar(const std::vector<Angle>& angles, const std::vector<double>& nu);
WeightVector solve_wstar(const ModelSpec& spec);

// Limiting cylindrical measure: per-direction line intensity w*_phi * nu_phi.
LineProcessSpec limit_measure(const ModelSpec& spec, const WeightVector& w);
LineProcessSpec limit_measure(const std::vector<Angle>& angles, const std::vector<double>& nu,
                              const WeightVector& w);

// Closed-form constants of the tropical-lines limit at site intensity lambda.
struct TropicalLineConstants {
    double mu_rect;  // mu_- = mu_| ; horizontal/vertical line intensity
    double mu_diag;  // mu_/ ; diagonal line intensity
};
TropicalLineConstants tropical_line_constants(double lambda);

// Deterministic census of a rectangle cut by parallel chords: n_a corner
// chords on one side, n_b full-width chords, n_c corner chords on the other.
struct FaceCounts {
    long triangles = 0;
    long quads = 0;
    long pentagons = 0;
    long hexagons = 0;
    long total() const { return triangles + quads + pentagons + hexagons; }
};
FaceCounts rectangle_face_census(long n_a, long n_b, long n_c);

// Expected per-rectangle face counts over independent Poisson chord counts
// with means a, b, c.
struct FaceExpectation {
    double tri = 0.0, quad = 0.0, pent = 0.0, hex = 0.0;
};
FaceExpectation face_expectation(double a, double b, double c);

struct QuadOptions {
    int nodes = 128;
    int check_nodes = 192;
    double max_error = 1e-6;
};

struct PolytropeDensities {
    std::map<int, double> p;  // keys 3..6
    enum class Method { integral, monte_carlo } method = Method::integral;
    double error_estimate = 0.0;  // quadrature: |GL(nodes) - GL(check_nodes)|, summed
    double sum() const;
    double weighted_sum() const;  // sum over i of i * p_i (vertex-count weighted)
};

// p_i = mu_rect^4 * integral of e_i(x,y) exp(-mu_rect(x+y)) dx dy with Poisson
// chord means a = c = mu_diag*min(x,y)/sqrt(2), b = mu_diag*|x-y|/sqrt(2).
// Throws when the error estimate exceeds opts.max_error.
PolytropeDensities polytrope_densities_integral(double mu_rect, double mu_diag,
                                                const QuadOptions& opts = {});

// Mean number of limit-process arm crossings of a body with the given
// per-orientation segment lengths. Keys are orientations mod pi; the three
// canonical orientations 0, pi/4, pi/2 use the tropical constants directly.
struct ArmBodyInputs {
    std::map<double, double> lengths;  // orientation (radians, mod pi) -> total length
    double d_horiz = 1.0, d_vert = 1.0, d_diag = 1.0;     // D_-, D_|, D_/
    double mu_horiz = 0.0, mu_vert = 0.0, mu_diag = 0.0;  // mu_-, mu_|, mu_/
    double lambda = 1.0;
};
double arm_body_mean(const ArmBodyInputs& in);

}  // namespace gilbert
