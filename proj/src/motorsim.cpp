#include "gilbert/motorsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gilbert {

long SimResult::death_count() const {
    long n = 0;
    for (const auto& t : trails) {
        if (!t.censored) ++n;
    }
    return n;
}

bool SimResult::point_on_some_trail(Vec2 p, double tol) const {
    for (const auto& t : trails) {
        Vec2 d = t.segment.b - t.segment.a;
        double len = t.length;
        if (len <= tol) {
            if (near(p, t.segment.a, tol)) return true;
            continue;
        }
        Vec2 u = d * (1.0 / len);
        double s = dot(p - t.segment.a, u);
        if (s < -tol || s > len + tol) continue;
        Vec2 q = t.segment.a + s * u;
        if (near(p, q, tol)) return true;
    }
    return false;
}

namespace {

struct Candidate {
    double victim_age;
    double killer_age;
    int victim;
    int killer;        // motorcycle index, or obstacle complex id
    int killer_segment;  // >= 0 marks an obstacle candidate
    Vec2 location;
};

bool candidate_order(const Candidate& a, const Candidate& b) {
    if (a.victim_age != b.victim_age) return a.victim_age < b.victim_age;
    if (a.victim != b.victim) return a.victim < b.victim;
    if (a.killer_segment != b.killer_segment) return a.killer_segment < b.killer_segment;
    return a.killer < b.killer;
}

struct MotoState {
    Vec2 origin;
    Vec2 dir;
    double cap = 0.0;        // horizon exit distance
    double final_dist = 0.0; // grave distance once dead, else cap
    int lives = 0;
    int source = 0;
    bool dead = false;
    std::vector<double> hit_dists;  // applied event distances, for location dedupe
};

}  // namespace

SimResult simulate(const std::vector<Motorcycle>& motorcycles,
                   const std::vector<Obstacle>& obstacles, int k, const SimOptions& opts) {
    if (k < 1) throw std::invalid_argument("simulate: k must be >= 1");
    size_t n = motorcycles.size();

    // All-parallel input would never terminate; reject it up front.
    if (n >= 2 && obstacles.empty()) {
        bool ok = false;
        for (size_t i = 0; i < n && !ok; ++i) {
            for (size_t j = i + 1; j < n && !ok; ++j) {
                double s = std::abs(
                    std::sin(motorcycles[i].angle.radians() - motorcycles[j].angle.radians()));
                if (s > 1e-12) ok = true;
            }
        }
        if (!ok && n > 0) {
            throw std::invalid_argument(
                "simulate: all motorcycles parallel (no-parallel-line assumption); "
                "the dynamics may not terminate");
        }
    }

    std::vector<MotoState> st(n);
    for (size_t i = 0; i < n; ++i) {
        st[i].origin = motorcycles[i].origin;
        st[i].dir = motorcycles[i].angle.unit();
        st[i].cap = ray_exit_distance(st[i].origin, st[i].dir, opts.horizon);
        st[i].final_dist = st[i].cap;
        st[i].lives = k;
        st[i].source = motorcycles[i].source_id;
    }

    SimResult out;
    out.motorcycles = motorcycles;
    out.obstacles = obstacles;
    out.horizon = opts.horizon;
    out.k = k;

    // Obstacle candidates are few; generate them all upfront.
    std::vector<Candidate> obstacle_events;
    for (size_t i = 0; i < n; ++i) {
        for (const auto& ob : obstacles) {
            if (ob.complex_id == st[i].source) continue;
            for (size_t sidx = 0; sidx < ob.segments.size(); ++sidx) {
                auto hit = ray_segment_intersection(st[i].origin, st[i].dir, ob.segments[sidx]);
                if (!hit || hit->t1 > st[i].cap) continue;
                obstacle_events.push_back({hit->t1, 0.0, static_cast<int>(i), ob.complex_id,
                                           static_cast<int>(sidx), hit->point});
            }
        }
    }
    std::sort(obstacle_events.begin(), obstacle_events.end(), candidate_order);
    size_t obstacle_cursor = 0;

    auto process = [&](const Candidate& c) {
        MotoState& v = st[c.victim];
        if (v.lives <= 0) return;
        if (c.victim_age > v.final_dist) return;
        if (c.killer_segment < 0) {
            const MotoState& kl = st[c.killer];
            if (c.killer_age > kl.final_dist) return;  // killer never traced p
        }
        for (double d : v.hit_dists) {
            if (std::abs(d - c.victim_age) <= kGeomTol) return;  // same location
        }
        v.hit_dists.push_back(c.victim_age);
        v.lives -= 1;
        CollisionEvent ev;
        ev.victim_id = c.victim;
        ev.killer_kind = c.killer_segment >= 0 ? KillerKind::obstacle : KillerKind::motorcycle;
        ev.killer_id = c.killer;
        ev.killer_segment = c.killer_segment;
        ev.location = c.location;
        ev.victim_age = c.victim_age;
        ev.killer_age = c.killer_age;
        ev.order_index = k - v.lives;
        ev.fatal = v.lives == 0;
        if (ev.fatal) {
            v.dead = true;
            v.final_dist = c.victim_age;
        }
        out.events.push_back(ev);
    };

    // Annulus sweep over victim age. Candidates for victim ages in (t_lo, t_hi]
    // are generated per phase; killer fates at ages < t_lo are already final,
    // which keeps the candidate set small.
    double max_cap = 0.0;
    for (const auto& s : st) max_cap = std::max(max_cap, s.cap);
    double span = opts.horizon.width() + opts.horizon.height();
    double t_hi = std::max(1e-9, span > 0 ? span / 64.0 : 1.0);
    double t_lo = 0.0;
    std::vector<Candidate> batch;
    while (true) {
        bool anyone_alive = false;
        double need = 0.0;
        for (const auto& s : st) {
            if (s.lives > 0) {
                anyone_alive = true;
                need = std::max(need, s.final_dist);
            }
        }
        if (!anyone_alive || t_lo >= need) break;

        batch.clear();
        double reach2 = 4.0 * t_hi * t_hi;  // |o_i - o_j| <= 2*t_hi for any candidate
        for (size_t i = 0; i < n; ++i) {
            if (st[i].lives <= 0 && st[i].final_dist < t_lo) continue;
            for (size_t j = 0; j < n; ++j) {
                if (i == j || st[i].source == st[j].source) continue;
                Vec2 delta = st[j].origin - st[i].origin;
                if (delta.x * delta.x + delta.y * delta.y > reach2) continue;
                // Inline two-ray crossing; victim is i.
                Vec2 d1 = st[i].dir, d2 = st[j].dir;
                double cr = cross(d1, d2);
                if (std::abs(cr) < 1e-12) continue;
                double ti = cross(delta, d2) / cr;
                double tj = cross(delta, d1) / cr;
                if (ti <= kRayOriginTol || tj <= kRayOriginTol) continue;
                if (ti <= t_lo || ti > t_hi) continue;
                if (ti > st[i].final_dist) continue;
                if (!(tj < ti)) continue;  // strict "comes first" rule
                if (tj > st[j].final_dist) continue;
                batch.push_back({ti, tj, static_cast<int>(i), static_cast<int>(j), -1,
                                 st[i].origin + ti * d1});
            }
        }
        std::sort(batch.begin(), batch.end(), candidate_order);

        size_t bi = 0;
        while (bi < batch.size() || obstacle_cursor < obstacle_events.size()) {
            bool take_obstacle = false;
            if (obstacle_cursor < obstacle_events.size() &&
                obstacle_events[obstacle_cursor].victim_age <= t_hi) {
                if (bi >= batch.size() ||
                    candidate_order(obstacle_events[obstacle_cursor], batch[bi])) {
                    take_obstacle = true;
                }
            } else if (bi >= batch.size()) {
                break;
            }
            if (take_obstacle) {
                process(obstacle_events[obstacle_cursor++]);
            } else {
                process(batch[bi++]);
            }
        }

        t_lo = t_hi;
        t_hi *= 2.0;
    }

    out.trails.resize(n);
    for (size_t i = 0; i < n; ++i) {
        Trail t;
        t.motorcycle_id = static_cast<int>(i);
        t.censored = !st[i].dead;
        t.length = st[i].final_dist;
        t.segment = {st[i].origin, st[i].origin + st[i].final_dist * st[i].dir};
        out.trails[i] = t;
    }
    std::sort(out.events.begin(), out.events.end(), [](const auto& a, const auto& b) {
        if (a.victim_age != b.victim_age) return a.victim_age < b.victim_age;
        if (a.victim_id != b.victim_id) return a.victim_id < b.victim_id;
        return a.killer_id < b.killer_id;
    });
    return out;
}

std::vector<Motorcycle> motorcycles_from_sites(const SitePattern& sites, int k) {
    std::vector<Motorcycle> out;
    if (sites.spec == nullptr) {
        throw std::invalid_argument("motorcycles_from_sites: pattern has no model spec");
    }
    const auto& angles = sites.spec->angles();
    int id = 0;
    for (size_t s = 0; s < sites.sites.size(); ++s) {
        for (int idx : sites.sites[s].angle_indices) {
            Motorcycle m;
            m.id = id++;
            m.origin = sites.sites[s].pos;
            m.angle = angles[idx];
            m.lives_initial = k;
            m.source_id = static_cast<int>(s);
            out.push_back(m);
        }
    }
    return out;
}

SimResult simulate(const SitePattern& sites, int k, const SimOptions& opts) {
    return simulate(motorcycles_from_sites(sites, k), {}, k, opts);
}

long count_potential_killers(const SitePattern& sites, Vec2 b, const Angle& phi, double y) {
    if (y <= 0.0) throw std::invalid_argument("count_potential_killers: y must be positive");
    if (sites.spec == nullptr) {
        throw std::invalid_argument("count_potential_killers: pattern has no model spec");
    }
    const auto& angles = sites.spec->angles();
    long count = 0;
    for (int psi = 0; psi < sites.spec->num_angles(); ++psi) {
        if (same_angle(angles[psi], phi)) continue;
        if (std::abs(std::sin(angles[psi].radians() - phi.radians())) < 1e-12) continue;
        KillRegion region = kill_region(phi, angles[psi], y, y);
        // tau_b places the vertex -w_phi*vec(phi) at b.
        Vec2 shift = b + y * phi.unit();
        std::vector<Vec2> poly = region.vertices;
        for (auto& p : poly) p += shift;
        for (const auto& site : sites.sites) {
            bool carries = false;
            for (int idx : site.angle_indices) {
                if (idx == psi) carries = true;
            }
            if (!carries) continue;
            if (point_in_convex_polygon(site.pos, poly)) ++count;
        }
    }
    return count;
}

PathLengthStats path_length_stats(const SimResult& result, const Angle& by,
                                  const Rect& core_window) {
    PathLengthStats stats;
    double sum = 0.0, sum2 = 0.0;
    for (size_t i = 0; i < result.motorcycles.size(); ++i) {
        const auto& m = result.motorcycles[i];
        if (!same_angle(m.angle, by, 1e-9)) continue;
        if (!core_window.contains(m.origin)) continue;
        const auto& t = result.trails[i];
        if (t.censored) {
            ++stats.censored;
            continue;
        }
        sum += t.length;
        sum2 += t.length * t.length;
        ++stats.count;
    }
    if (stats.count > 0) {
        stats.mean = sum / stats.count;
        if (stats.count > 1) {
            stats.variance = (sum2 - sum * sum / stats.count) / (stats.count - 1);
        }
    }
    return stats;
}

double default_margin(double wstar_max, int k) {
    return 4.0 * wstar_max * std::sqrt(static_cast<double>(k));
}

}  // namespace gilbert
