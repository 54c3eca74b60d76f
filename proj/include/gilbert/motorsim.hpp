#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gilbert/geom.hpp"
#include "gilbert/procs.hpp"

namespace gilbert {

struct Motorcycle {
    int id = 0;
    Vec2 origin;
    Angle angle;
    int lives_initial = 1;
    int source_id = 0;  // site index or complex id; same-source pairs never interact
    int weight = 1;     // arm multiplicity, metadata only
};

struct Obstacle {
    int complex_id = 0;
    std::vector<Segment> segments;
};

enum class KillerKind { motorcycle, obstacle };

struct CollisionEvent {
    int victim_id = 0;
    KillerKind killer_kind = KillerKind::motorcycle;
    int killer_id = 0;       // motorcycle id, or obstacle complex id
    int killer_segment = -1; // segment index within the obstacle complex
    Vec2 location;
    double victim_age = 0.0;
    double killer_age = 0.0;  // 0 for obstacles
    bool fatal = false;
    int order_index = 0;  // which life the victim lost, 1-based
};

struct Trail {
    int motorcycle_id = 0;
    Segment segment;       // origin to grave, or to the horizon if censored
    double length = 0.0;
    bool censored = false; // frozen at the horizon, still alive
};

struct SimOptions {
    Rect horizon;             // motorcycles freeze on exiting this box
    double tie_tol = 1e-12;   // reserved: strict "comes first" rule is applied
};

struct SimResult {
    std::vector<Motorcycle> motorcycles;
    std::vector<CollisionEvent> events;  // applied life losses, time-ordered
    std::vector<Trail> trails;           // one per motorcycle, same order
    std::vector<Obstacle> obstacles;
    Rect horizon;
    int k = 1;

    const Trail& trail_of(int motorcycle_id) const { return trails[motorcycle_id]; }
    long death_count() const;
    bool point_on_some_trail(Vec2 p, double tol = kGeomTol) const;
};

// Event-driven iterated Gilbert dynamics. Candidate crossings feed a queue
// ordered by victim age with lazy re-validation; a motorcycle i loses a life
// at p iff p lies on the realized trail of some j from another source whose
// age at p is strictly smaller, or on another complex's obstacle segment.
SimResult simulate(const std::vector<Motorcycle>& motorcycles,
                   const std::vector<Obstacle>& obstacles, int k, const SimOptions& opts);

// Sites version: one motorcycle per site angle; source = site index.
SimResult simulate(const SitePattern& sites, int k, const SimOptions& opts);

std::vector<Motorcycle> motorcycles_from_sites(const SitePattern& sites, int k);

// Number of potential killers of a phi-motorcycle at b over distance y:
// (site, direction psi) incidences with the site inside tau_b T^{y,y}_{phi psi}.
long count_potential_killers(const SitePattern& sites, Vec2 b, const Angle& phi, double y);

struct PathLengthStats {
    double mean = 0.0;
    double variance = 0.0;
    long count = 0;
    long censored = 0;
};

// Death-distance statistics over motorcycles with origin in core_window and
// the given direction; censored motorcycles are excluded and counted.
PathLengthStats path_length_stats(const SimResult& result, const Angle& by,
                                  const Rect& core_window);

// Margin heuristic: trails concentrate near w*sqrt(k), boundary effects decay
// exponentially beyond a few multiples.
double default_margin(double wstar_max, int k);

}  // namespace gilbert
