#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gilbert/geom.hpp"
#include "gilbert/rng.hpp"

namespace gilbert {

// One supported angle tuple of the mark law: a sorted index set into the
// model's angle list, with its probability within A^{|Q|}.
struct AngleSetAtom {
    std::vector<int> indices;  // sorted, distinct
    double prob = 0.0;
};

// Compound Poisson site process: intensity lambda, multiplicity law pi_m and
// per-multiplicity angle-set laws A^m over m-subsets of the angle list.
class ModelSpec {
public:
    ModelSpec(double lambda, std::vector<Angle> angles,
              std::vector<double> multiplicity_probs,
              std::vector<std::vector<AngleSetAtom>> angle_set_law);

    double lambda() const { return lambda_; }
    const std::vector<Angle>& angles() const { return angles_; }
    int num_angles() const { return static_cast<int>(angles_.size()); }

    // mu_Q = lambda * pi_{|Q|} * A^{|Q|}(Q); throws on indices outside the model.
    double mu_of(const std::vector<int>& q) const;

    // nu_phi = sum over Q containing phi of mu_Q.
    double nu(int angle_index) const;
    const std::vector<double>& nu_all() const { return nu_; }

    double mean_multiplicity() const;

    // All supported atoms flattened, with their mu weights.
    struct SupportEntry {
        std::vector<int> indices;
        double mu = 0.0;
    };
    const std::vector<SupportEntry>& support() const { return support_; }

    // There are two supported, non-parallel travel directions.
    bool no_parallel_line_ok() const;
    // No isolated sites and every supported tuple has consecutive gaps <= pi.
    bool mosaic_grade() const;
    void require_valid() const;  // throws when no_parallel_line_ok() fails

    static ModelSpec tropical_lines(double lambda);
    static ModelSpec rectangular(double lambda);
    // Single-tuple model: all sites carry exactly this angle set.
    static ModelSpec single_tuple(double lambda, std::vector<Angle> angles);

private:
    double lambda_;
    std::vector<Angle> angles_;
    std::vector<double> mult_probs_;
    std::vector<std::vector<AngleSetAtom>> law_;
    std::vector<SupportEntry> support_;
    std::vector<double> nu_;
};

struct Site {
    Vec2 pos;
    std::vector<int> angle_indices;
};

struct SitePattern {
    Rect window;
    std::vector<Site> sites;
    const ModelSpec* spec = nullptr;  // non-owning; may be null for hand-built patterns
};

// Poisson(lambda*|window|) sites, i.i.d. uniform locations, marks from the
// model law. Fixed draw order per site: x, y, multiplicity, angle tuple.
SitePattern sample_sites(const ModelSpec& spec, const Rect& window, uint64_t seed);

// Limiting Poisson line process, one atom per motorcycle direction phi with
// offsets measured along phi^perp.
struct LineProcessSpec {
    struct Entry {
        Angle phi;                // direction of travel / of the line
        double intensity = 0.0;   // lines per unit length of the phi^perp axis
    };
    std::vector<Entry> entries;

    double total_intensity() const;           // Lambda
    double theta_mass(int entry_index) const; // Theta mass at phi^perp
};

struct Line {
    Angle dir;       // direction of the line
    double offset;   // signed offset along dir^perp; closest point = offset*vec(dir^perp)
};

std::vector<Line> sample_line_process(const LineProcessSpec& lp, const Rect& window,
                                      uint64_t seed);

// Clip a line to a box; empty segment (degenerate) when it misses.
Segment clip_line(const Line& l, const Rect& box);

}  // namespace gilbert
