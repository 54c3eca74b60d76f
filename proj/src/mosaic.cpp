#include "gilbert/mosaic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace gilbert {

const char* to_string(VertexKind k) {
    switch (k) {
        case VertexKind::site: return "site";
        case VertexKind::grave: return "grave";
        case VertexKind::crossing: return "crossing";
        case VertexKind::complex_vertex: return "complex_vertex";
        case VertexKind::flat: return "flat";
        case VertexKind::horizon: return "horizon";
    }
    return "?";
}

namespace {

// Merges points within tolerance into shared vertex ids (sweep by x).
class PointIndexer {
public:
    explicit PointIndexer(double tol = kGeomTol) : tol_(tol) {}

    int add(Vec2 p, VertexKind kind) {
        raw_.push_back({p, kind});
        return static_cast<int>(raw_.size()) - 1;
    }

    // Builds clusters; fills raw->vertex map and the vertex list.
    void finalize(std::vector<int>& raw_to_vertex, std::vector<MosaicVertex>& verts) const {
        size_t n = raw_.size();
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (raw_[a].p.x != raw_[b].p.x) return raw_[a].p.x < raw_[b].p.x;
            return raw_[a].p.y < raw_[b].p.y;
        });
        raw_to_vertex.assign(n, -1);
        verts.clear();
        std::vector<int> active;  // cluster ids, created in x order
        size_t active_start = 0;
        for (int idx : order) {
            Vec2 p = raw_[idx].p;
            while (active_start < active.size() &&
                   verts[active[active_start]].p.x < p.x - tol_) {
                ++active_start;
            }
            int found = -1;
            for (size_t a = active_start; a < active.size(); ++a) {
                if (std::abs(verts[active[a]].p.y - p.y) <= tol_ &&
                    std::abs(verts[active[a]].p.x - p.x) <= tol_) {
                    found = active[a];
                    break;
                }
            }
            if (found < 0) {
                MosaicVertex v;
                v.p = p;
                v.kind = raw_[idx].kind;
                verts.push_back(v);
                found = static_cast<int>(verts.size()) - 1;
                active.push_back(found);
            } else {
                merge_kind(verts[found], raw_[idx].kind);
            }
            raw_to_vertex[idx] = found;
        }
    }

private:
    struct RawPoint {
        Vec2 p;
        VertexKind kind;
    };

    static int kind_rank(VertexKind k) {
        switch (k) {
            case VertexKind::site: return 5;
            case VertexKind::grave: return 4;
            case VertexKind::complex_vertex: return 3;
            case VertexKind::crossing: return 2;
            case VertexKind::flat: return 1;
            case VertexKind::horizon: return 0;
        }
        return 0;
    }

    static void merge_kind(MosaicVertex& v, VertexKind k) {
        if (kind_rank(k) > kind_rank(v.kind)) v.kind = k;
    }

    double tol_;
    std::vector<RawPoint> raw_;
};

void add_chain_edges(std::vector<std::array<int, 2>>& edges,
                     std::vector<std::pair<double, int>>& stops) {
    std::sort(stops.begin(), stops.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i + 1 < stops.size(); ++i) {
        int u = stops[i].second;
        int v = stops[i + 1].second;
        if (u != v) edges.push_back({u, v});
    }
}

// Shared finishing pass: rotations, face orbits, components.
void finish_graph(MosaicGraph& g) {
    size_t nv = g.verts.size();
    size_t ne = g.edges.size();

    // Drop duplicate edges (same unordered pair).
    {
        std::vector<std::array<int, 2>> uniq;
        std::vector<std::array<int, 2>> keys;
        keys.reserve(ne);
        for (auto& e : g.edges) {
            keys.push_back({std::min(e[0], e[1]), std::max(e[0], e[1])});
        }
        std::vector<int> order(ne);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });
        for (size_t i = 0; i < ne; ++i) {
            if (i > 0 && keys[order[i]] == keys[order[i - 1]]) continue;
            uniq.push_back(g.edges[order[i]]);
        }
        std::sort(uniq.begin(), uniq.end());
        g.edges = std::move(uniq);
        ne = g.edges.size();
    }

    g.out_half_edges.assign(nv, {});
    for (size_t e = 0; e < ne; ++e) {
        g.out_half_edges[g.edges[e][0]].push_back(static_cast<int>(2 * e));
        g.out_half_edges[g.edges[e][1]].push_back(static_cast<int>(2 * e + 1));
    }
    for (size_t v = 0; v < nv; ++v) {
        auto& out = g.out_half_edges[v];
        std::sort(out.begin(), out.end(), [&](int a, int b) {
            Vec2 da = g.verts[g.he_target(a)].p - g.verts[v].p;
            Vec2 db = g.verts[g.he_target(b)].p - g.verts[v].p;
            double aa = std::atan2(da.y, da.x);
            double ab = std::atan2(db.y, db.x);
            if (aa != ab) return aa < ab;
            return a < b;
        });
        g.verts[v].degree = static_cast<int>(out.size());
    }

    // next(h): clockwise predecessor of twin(h) around target(h); orbits walk
    // faces counterclockwise.
    g.next_half_edge.assign(2 * ne, -1);
    std::vector<int> pos(2 * ne, -1);
    for (size_t v = 0; v < nv; ++v) {
        for (size_t i = 0; i < g.out_half_edges[v].size(); ++i) {
            pos[g.out_half_edges[v][i]] = static_cast<int>(i);
        }
    }
    for (size_t h = 0; h < 2 * ne; ++h) {
        int t = g.he_target(static_cast<int>(h));
        const auto& out = g.out_half_edges[t];
        int tw = MosaicGraph::he_twin(static_cast<int>(h));
        int idx = pos[tw];
        int n = static_cast<int>(out.size());
        g.next_half_edge[h] = out[(idx - 1 + n) % n];
    }

    // Face orbits.
    g.faces.clear();
    std::vector<int> face_of(2 * ne, -1);
    for (size_t h0 = 0; h0 < 2 * ne; ++h0) {
        if (face_of[h0] >= 0) continue;
        MosaicFace f;
        int fid = static_cast<int>(g.faces.size());
        int h = static_cast<int>(h0);
        double area2 = 0.0;
        double cx = 0.0, cy = 0.0;
        bool dangling = false, horizon_touch = false;
        do {
            face_of[h] = fid;
            int u = g.he_origin(h);
            int v = g.he_target(h);
            f.verts.push_back(u);
            const Vec2& a = g.verts[u].p;
            const Vec2& b = g.verts[v].p;
            double cr = cross(a, b);
            area2 += cr;
            cx += (a.x + b.x) * cr;
            cy += (a.y + b.y) * cr;
            if (g.verts[u].degree <= 1) dangling = true;
            if (g.verts[u].kind == VertexKind::horizon) horizon_touch = true;
            h = g.next_half_edge[h];
        } while (h != static_cast<int>(h0));
        f.signed_area = 0.5 * area2;
        if (std::abs(area2) > 1e-12) {
            f.centroid = {cx / (3.0 * area2), cy / (3.0 * area2)};
        } else {
            Vec2 acc{0, 0};
            for (int u : f.verts) acc += g.verts[u].p;
            f.centroid = acc * (1.0 / std::max<size_t>(1, f.verts.size()));
        }
        f.bounded = f.signed_area > 1e-12;
        f.census_ok = f.bounded && !dangling && !horizon_touch;

        // Proper vertices and convexity along the walk.
        size_t n = f.verts.size();
        if (n >= 3) {
            int proper = 0;
            bool convex = true;
            for (size_t i = 0; i < n; ++i) {
                Vec2 prev = g.verts[f.verts[(i + n - 1) % n]].p;
                Vec2 cur = g.verts[f.verts[i]].p;
                Vec2 nxt = g.verts[f.verts[(i + 1) % n]].p;
                Vec2 din = cur - prev;
                Vec2 dout = nxt - cur;
                double lin = din.norm(), lout = dout.norm();
                if (lin < kGeomTol || lout < kGeomTol) continue;
                double turn = cross(din, dout) / (lin * lout);
                double ahead = dot(din, dout) / (lin * lout);
                if (std::abs(turn) > 1e-9 || ahead < 0.0) ++proper;
                if (turn < -1e-9) convex = false;
            }
            f.proper_vertices = proper;
            f.convex = convex;
        }
        g.faces.push_back(std::move(f));
    }

    // Connected components over vertices with edges.
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (auto& e : g.edges) {
        int a = find(e[0]), b = find(e[1]);
        if (a != b) parent[a] = b;
    }
    g.component.assign(nv, -1);
    int nc = 0;
    std::vector<int> label(nv, -1);
    for (size_t v = 0; v < nv; ++v) {
        if (g.verts[v].degree == 0) continue;
        int r = find(static_cast<int>(v));
        if (label[r] < 0) label[r] = nc++;
        g.component[v] = label[r];
    }
    g.n_components = nc;
}

}  // namespace

long MosaicGraph::bounded_face_count() const {
    long n = 0;
    for (const auto& f : faces) {
        if (f.bounded) ++n;
    }
    return n;
}

std::vector<long> MosaicGraph::euler_characteristics() const {
    std::vector<long> v_count(n_components, 0), e_count(n_components, 0),
        f_count(n_components, 0);
    for (size_t v = 0; v < verts.size(); ++v) {
        if (component[v] >= 0) ++v_count[component[v]];
    }
    for (const auto& e : edges) ++e_count[component[e[0]]];
    for (const auto& f : faces) {
        if (f.bounded && !f.verts.empty()) ++f_count[component[f.verts[0]]];
    }
    std::vector<long> chi(n_components, 0);
    for (int c = 0; c < n_components; ++c) chi[c] = v_count[c] - e_count[c] + f_count[c];
    return chi;
}

MosaicGraph build_mosaic(const SimResult& sim) {
    PointIndexer indexer;
    size_t nm = sim.motorcycles.size();

    // Raw points: motorcycle origins, censored tips, obstacle endpoints, events.
    std::vector<int> origin_raw(nm), tip_raw(nm, -1);
    for (size_t i = 0; i < nm; ++i) {
        origin_raw[i] = indexer.add(sim.motorcycles[i].origin, VertexKind::site);
        if (sim.trails[i].censored) {
            tip_raw[i] = indexer.add(sim.trails[i].segment.b, VertexKind::horizon);
        }
    }
    std::vector<std::vector<int>> obstacle_end_raw(sim.obstacles.size());
    for (size_t o = 0; o < sim.obstacles.size(); ++o) {
        for (const auto& s : sim.obstacles[o].segments) {
            obstacle_end_raw[o].push_back(indexer.add(s.a, VertexKind::complex_vertex));
            obstacle_end_raw[o].push_back(indexer.add(s.b, VertexKind::complex_vertex));
        }
    }
    std::vector<int> event_raw(sim.events.size());
    for (size_t e = 0; e < sim.events.size(); ++e) {
        event_raw[e] = indexer.add(sim.events[e].location,
                                   sim.events[e].fatal ? VertexKind::grave
                                                       : VertexKind::crossing);
    }

    std::vector<int> raw_to_vertex;
    MosaicGraph g;
    indexer.finalize(raw_to_vertex, g.verts);

    // Site multiplicity: motorcycles sharing one origin vertex.
    for (size_t i = 0; i < nm; ++i) g.verts[raw_to_vertex[origin_raw[i]]].mult = 0;
    for (size_t i = 0; i < nm; ++i) g.verts[raw_to_vertex[origin_raw[i]]].mult += 1;

    // Split stops per trail and per obstacle segment.
    std::vector<std::vector<std::pair<double, int>>> trail_stops(nm);
    for (size_t i = 0; i < nm; ++i) {
        trail_stops[i].push_back({0.0, raw_to_vertex[origin_raw[i]]});
        if (tip_raw[i] >= 0) {
            trail_stops[i].push_back({sim.trails[i].length, raw_to_vertex[tip_raw[i]]});
        }
    }
    std::map<std::pair<int, int>, std::vector<std::pair<double, int>>> obstacle_stops;

    for (size_t e = 0; e < sim.events.size(); ++e) {
        const auto& ev = sim.events[e];
        int vid = raw_to_vertex[event_raw[e]];
        trail_stops[ev.victim_id].push_back({ev.victim_age, vid});
        if (ev.killer_kind == KillerKind::motorcycle) {
            const auto& kt = sim.trails[ev.killer_id];
            Vec2 expected = kt.segment.a +
                            ev.killer_age * sim.motorcycles[ev.killer_id].angle.unit();
            if (ev.killer_age > kt.length + 1e-6 || !near(expected, ev.location, 1e-6)) {
                throw std::runtime_error(
                    "build_mosaic: event for victim " + std::to_string(ev.victim_id) +
                    " does not lie on killer trail " + std::to_string(ev.killer_id));
            }
            trail_stops[ev.killer_id].push_back({ev.killer_age, vid});
        } else {
            // Obstacle killer: split that segment at the event point.
            int ob_index = -1;
            for (size_t o = 0; o < sim.obstacles.size(); ++o) {
                if (sim.obstacles[o].complex_id == ev.killer_id) {
                    ob_index = static_cast<int>(o);
                }
            }
            if (ob_index < 0 || ev.killer_segment < 0) {
                throw std::runtime_error("build_mosaic: event references unknown obstacle");
            }
            const Segment& s = sim.obstacles[ob_index].segments[ev.killer_segment];
            double t = dot(ev.location - s.a, s.b - s.a) / std::max(s.length() * s.length(), 1e-30);
            obstacle_stops[{ob_index, ev.killer_segment}].push_back(
                {t, vid});
        }
    }

    for (size_t i = 0; i < nm; ++i) add_chain_edges(g.edges, trail_stops[i]);
    for (size_t o = 0; o < sim.obstacles.size(); ++o) {
        for (size_t sidx = 0; sidx < sim.obstacles[o].segments.size(); ++sidx) {
            std::vector<std::pair<double, int>> stops;
            stops.push_back({0.0, raw_to_vertex[obstacle_end_raw[o][2 * sidx]]});
            stops.push_back({1.0, raw_to_vertex[obstacle_end_raw[o][2 * sidx + 1]]});
            auto it = obstacle_stops.find({static_cast<int>(o), static_cast<int>(sidx)});
            if (it != obstacle_stops.end()) {
                for (auto& st : it->second) stops.push_back(st);
            }
            add_chain_edges(g.edges, stops);
        }
    }

    finish_graph(g);
    return g;
}

MosaicGraph build_arrangement(const std::vector<Segment>& segments, VertexKind endpoint_kind) {
    PointIndexer indexer;
    size_t n = segments.size();
    std::vector<std::array<int, 2>> end_raw(n);
    for (size_t i = 0; i < n; ++i) {
        end_raw[i][0] = indexer.add(segments[i].a, endpoint_kind);
        end_raw[i][1] = indexer.add(segments[i].b, endpoint_kind);
    }
    std::vector<std::vector<std::pair<double, int>>> stops(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            auto hit = segment_intersection(segments[i], segments[j], kGeomTol);
            if (!hit) continue;
            int raw = indexer.add(hit->point, VertexKind::crossing);
            stops[i].push_back({hit->t1, raw});
            stops[j].push_back({hit->t2, raw});
        }
    }
    std::vector<int> raw_to_vertex;
    MosaicGraph g;
    indexer.finalize(raw_to_vertex, g.verts);
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> chain;
        chain.push_back({0.0, raw_to_vertex[end_raw[i][0]]});
        chain.push_back({1.0, raw_to_vertex[end_raw[i][1]]});
        for (auto& [t, raw] : stops[i]) chain.push_back({t, raw_to_vertex[raw]});
        add_chain_edges(g.edges, chain);
    }
    finish_graph(g);
    return g;
}

CensusResult census(const MosaicGraph& g, const Rect& core_window) {
    double area = core_window.area();
    if (area <= 0.0) throw std::invalid_argument("census: empty core window");
    CensusResult out;
    long v_in = 0;
    double v_weighted = 0.0;
    for (const auto& v : g.verts) {
        if (!core_window.contains(v.p)) continue;
        ++v_in;
        v_weighted += (v.kind == VertexKind::site) ? v.mult : 1.0;
        out.per_kind[to_string(v.kind)] += 1.0;
    }
    long e_in = 0;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (core_window.contains(g.edge_segment(static_cast<int>(e)).midpoint())) ++e_in;
    }
    long f_in = 0, dropped = 0;
    for (const auto& f : g.faces) {
        if (!f.bounded) continue;
        if (!core_window.contains(f.centroid)) continue;
        if (!f.census_ok) {
            ++dropped;
            continue;
        }
        ++f_in;
    }
    out.lambda0 = v_in / area;
    out.lambda0_weighted = v_weighted / area;
    out.lambda1 = e_in / area;
    out.lambda2 = f_in / area;
    for (auto& [k, v] : out.per_kind) v /= area;
    out.euler_gap = out.lambda1 - out.lambda0 - out.lambda2;
    out.mean_vertices_per_face = out.lambda2 > 0 ? 2.0 * out.lambda1 / out.lambda2 : 0.0;
    out.dropped_faces = dropped;
    return out;
}

PolytropeCensus classify_polytropes(const MosaicGraph& g, const Rect& core_window) {
    double area = core_window.area();
    if (area <= 0.0) throw std::invalid_argument("classify_polytropes: empty core window");
    PolytropeCensus out;
    for (const auto& f : g.faces) {
        if (!f.census_ok || !core_window.contains(f.centroid)) continue;
        int pv = f.proper_vertices;
        if (pv >= 3 && pv <= 6) {
            out.intensity[pv] += 1.0;
        } else {
            out.flagged += 1.0;
        }
    }
    for (auto& [k, v] : out.intensity) {
        v /= area;
        out.sum += v;
        out.weighted_sum += k * v;
    }
    out.flagged /= area;
    return out;
}

std::map<std::pair<double, double>, double> intersection_type_census(const MosaicGraph& g,
                                                                     const Rect& core_window) {
    double area = core_window.area();
    if (area <= 0.0) {
        throw std::invalid_argument("intersection_type_census: empty core window");
    }
    auto mod_pi = [](double a) {
        double r = std::fmod(a, kPi);
        if (r < 0) r += kPi;
        if (r > kPi - 1e-9) r = 0.0;
        return std::round(r * 1e9) / 1e9;
    };
    std::map<std::pair<double, double>, double> out;
    for (size_t v = 0; v < g.verts.size(); ++v) {
        if (g.verts[v].kind != VertexKind::crossing) continue;
        if (!core_window.contains(g.verts[v].p)) continue;
        std::vector<double> dirs;
        for (int h : g.out_half_edges[v]) {
            Vec2 d = g.verts[g.he_target(h)].p - g.verts[v].p;
            double ang = mod_pi(std::atan2(d.y, d.x));
            bool seen = false;
            for (double x : dirs) {
                if (std::abs(x - ang) < 1e-7) seen = true;
            }
            if (!seen) dirs.push_back(ang);
        }
        if (dirs.size() != 2) continue;
        std::sort(dirs.begin(), dirs.end());
        out[{dirs[0], dirs[1]}] += 1.0;
    }
    for (auto& [k, v] : out) v /= area;
    return out;
}

}  // namespace gilbert
