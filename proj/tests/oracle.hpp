#pragma once

// Test-only brute-force fixed-point dynamics: recompute every pairwise
// crossing against the current trail lengths until the lengths stabilize.
// Independent of the event-driven queue in motorsim.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gilbert/motorsim.hpp"

namespace gilbert::testing {

struct OracleEvent {
    int victim;
    KillerKind kind;
    int killer;
    double victim_age;
    double killer_age;
    int order_index;
    bool fatal;
};

struct OracleResult {
    std::vector<double> final_dist;   // grave distance or horizon cap
    std::vector<bool> dead;
    std::vector<OracleEvent> events;
};

inline OracleResult brute_force_oracle(const std::vector<Motorcycle>& motos,
                                       const std::vector<Obstacle>& obstacles, int k,
                                       const Rect& horizon) {
    size_t n = motos.size();
    std::vector<Vec2> dir(n);
    std::vector<double> cap(n);
    for (size_t i = 0; i < n; ++i) {
        dir[i] = motos[i].angle.unit();
        cap[i] = ray_exit_distance(motos[i].origin, dir[i], horizon);
    }

    struct Crossing {
        int victim;
        KillerKind kind;
        int killer;
        double t_victim;
        double t_killer;
    };
    std::vector<Crossing> crossings;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i == j || motos[i].source_id == motos[j].source_id) continue;
            auto hit = ray_intersection(motos[i].origin, motos[i].angle, motos[j].origin,
                                        motos[j].angle);
            if (!hit) continue;
            if (hit->t2 < hit->t1) {  // strict: j comes first
                crossings.push_back({static_cast<int>(i), KillerKind::motorcycle,
                                     static_cast<int>(j), hit->t1, hit->t2});
            }
        }
        for (const auto& ob : obstacles) {
            if (ob.complex_id == motos[i].source_id) continue;
            for (size_t s = 0; s < ob.segments.size(); ++s) {
                auto hit = ray_segment_intersection(motos[i].origin, dir[i], ob.segments[s]);
                if (hit) {
                    crossings.push_back({static_cast<int>(i), KillerKind::obstacle,
                                         ob.complex_id, hit->t1, 0.0});
                }
            }
        }
    }

    std::vector<double> len = cap;
    std::vector<bool> dead(n, false);
    // Death distances under the current killer trails: the k-th valid hit.
    auto sweep = [&](std::vector<double>& out, std::vector<bool>& out_dead) {
        for (size_t i = 0; i < n; ++i) {
            std::vector<double> hits;
            for (const auto& c : crossings) {
                if (c.victim != static_cast<int>(i)) continue;
                if (c.t_victim > cap[i]) continue;
                if (c.kind == KillerKind::motorcycle && c.t_killer > len[c.killer]) continue;
                hits.push_back(c.t_victim);
            }
            std::sort(hits.begin(), hits.end());
            // Collapse same-location hits (equal distances along the ray).
            hits.erase(std::unique(hits.begin(), hits.end(),
                                   [](double a, double b) { return std::abs(a - b) <= kGeomTol; }),
                       hits.end());
            if (static_cast<int>(hits.size()) >= k) {
                out[i] = hits[k - 1];
                out_dead[i] = true;
            } else {
                out[i] = cap[i];
                out_dead[i] = false;
            }
        }
    };

    int max_iter = static_cast<int>(n) * k + 16;
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> next(n);
        std::vector<bool> next_dead(n, false);
        sweep(next, next_dead);
        if (next == len) {
            len = next;
            dead = next_dead;
            break;
        }
        len = next;
        dead = next_dead;
        if (it == max_iter - 1) {
            throw std::runtime_error("brute_force_oracle: fixed point did not stabilize");
        }
    }

    OracleResult out;
    out.final_dist = len;
    out.dead = dead;
    for (size_t i = 0; i < n; ++i) {
        std::vector<Crossing> hits;
        for (const auto& c : crossings) {
            if (c.victim != static_cast<int>(i)) continue;
            if (c.t_victim > len[i] + kGeomTol) continue;
            if (c.kind == KillerKind::motorcycle && c.t_killer > len[c.killer]) continue;
            hits.push_back(c);
        }
        std::sort(hits.begin(), hits.end(),
                  [](const Crossing& a, const Crossing& b) { return a.t_victim < b.t_victim; });
        int order = 0;
        double prev = -1.0;
        for (const auto& h : hits) {
            if (order >= k) break;
            if (order > 0 && std::abs(h.t_victim - prev) <= kGeomTol) continue;
            ++order;
            prev = h.t_victim;
            out.events.push_back({h.victim, h.kind, h.killer, h.t_victim, h.t_killer, order,
                                  order == k});
        }
    }
    return out;
}

}  // namespace gilbert::testing
