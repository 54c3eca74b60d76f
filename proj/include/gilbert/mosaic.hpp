#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gilbert/geom.hpp"
#include "gilbert/motorsim.hpp"
#include "gilbert/procs.hpp"

namespace gilbert {

enum class VertexKind { site, grave, crossing, complex_vertex, flat, horizon };

const char* to_string(VertexKind k);

struct MosaicVertex {
    Vec2 p;
    VertexKind kind = VertexKind::crossing;
    int mult = 1;     // motorcycles sharing this origin (sites only)
    int degree = 0;
};

struct MosaicFace {
    std::vector<int> verts;  // closed counterclockwise walk
    double signed_area = 0.0;
    Vec2 centroid;
    bool bounded = false;
    bool census_ok = false;  // bounded, no dangling or horizon vertex on the walk
    bool convex = true;
    int proper_vertices = 0; // corners after dropping flat (collinear) vertices
};

// Planar subdivision as a half-edge structure. Half-edge 2e runs edges[e][0]
// -> edges[e][1]; 2e+1 is its twin.
struct MosaicGraph {
    std::vector<MosaicVertex> verts;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::vector<int>> out_half_edges;  // per vertex, CCW-sorted
    std::vector<int> next_half_edge;
    std::vector<MosaicFace> faces;
    std::vector<int> component;  // per vertex
    int n_components = 0;

    int he_origin(int h) const { return (h & 1) ? edges[h >> 1][1] : edges[h >> 1][0]; }
    int he_target(int h) const { return (h & 1) ? edges[h >> 1][0] : edges[h >> 1][1]; }
    static int he_twin(int h) { return h ^ 1; }
    Segment edge_segment(int e) const {
        return {verts[edges[e][0]].p, verts[edges[e][1]].p};
    }

    long bounded_face_count() const;
    // V - E + F_bounded per connected component; 1 everywhere for a valid mosaic.
    std::vector<long> euler_characteristics() const;
};

// Arrangement from the simulator's event log: trails and obstacle segments are
// split at the recorded events; no intersections are recomputed. Throws when
// an event does not lie on its killer's trail.
MosaicGraph build_mosaic(const SimResult& sim);

// Arrangement of raw segments; pairwise intersections are computed here.
// Segment endpoints get `endpoint_kind`, crossings become crossing vertices.
MosaicGraph build_arrangement(const std::vector<Segment>& segments,
                              VertexKind endpoint_kind = VertexKind::horizon);

struct CensusResult {
    double lambda0 = 0.0;  // vertices per unit area (geometric convention)
    double lambda1 = 0.0;  // edges (centroid rule)
    double lambda2 = 0.0;  // bounded faces (centroid rule)
    double lambda0_weighted = 0.0;  // sites counted with their multiplicity
    std::map<std::string, double> per_kind;
    double euler_gap = 0.0;            // lambda1 - lambda0 - lambda2
    double mean_vertices_per_face = 0.0;  // 2*lambda1/lambda2
    long dropped_faces = 0;            // bounded faces excluded from the census
};

CensusResult census(const MosaicGraph& g, const Rect& core_window);

struct PolytropeCensus {
    std::map<int, double> intensity;  // proper vertex count 3..6 -> per unit area
    double flagged = 0.0;             // faces outside 3..6 (bug or non-tropical input)
    double sum = 0.0;                 // sum of intensities over 3..6
    double weighted_sum = 0.0;        // sum of (#vertices) * intensity
};

PolytropeCensus classify_polytropes(const MosaicGraph& g, const Rect& core_window);

// Intensity of degree-4 crossing vertices per unordered pair of line
// directions (mod pi, radians rounded to 1e-9).
std::map<std::pair<double, double>, double> intersection_type_census(const MosaicGraph& g,
                                                                     const Rect& core_window);

}  // namespace gilbert
