// Command-line front end: simulate mosaics, solve the limit theory, compare
// empirical statistics against closed forms, and emit CSV/SVG artifacts.

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gilbert/io.hpp"
#include "gilbert/limits.hpp"
#include "gilbert/mosaic.hpp"
#include "gilbert/motorsim.hpp"
#include "gilbert/procs.hpp"
#include "gilbert/tropical.hpp"

using namespace gilbert;

namespace {

struct CommonConfig {
    std::string model = "tropical-lines";
    double lambda = 1.0;
    int k = 1;
    double window = 10.0;
    uint64_t seed = 1;
    std::string out = "out";
    int threads = 1;
    std::string angles;       // custom model: comma-separated radians
    int degree_max = 3;       // germ-grain curve law
    double spread = 1.0;      // germ-grain coefficient spread
    double margin = -1.0;     // <0: derive from w*
};

void add_common(CLI::App* cmd, CommonConfig& cfg, bool with_model = true,
                bool lambda_required = false) {
    if (with_model) {
        cmd->add_option("--model", cfg.model,
                        "tropical-lines | rectangular | custom | germ-grain")
            ->capture_default_str();
        cmd->add_option("--angles", cfg.angles,
                        "custom model: comma-separated angles in radians");
    }
    auto* lam = cmd->add_option("--lambda", cfg.lambda, "site intensity");
    if (lambda_required) {
        lam->required();
    } else {
        lam->capture_default_str();
    }
    cmd->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--out", cfg.out, "output directory")->capture_default_str()
        ->envname("GILBERT_OUTDIR");
}

std::vector<Angle> parse_angles(const std::string& text) {
    std::vector<Angle> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(Angle(std::stod(tok)));
    }
    return out;
}

ModelSpec make_model(const CommonConfig& cfg) {
    if (cfg.model == "tropical-lines") return ModelSpec::tropical_lines(cfg.lambda);
    if (cfg.model == "rectangular") return ModelSpec::rectangular(cfg.lambda);
    if (cfg.model == "custom") {
        auto angles = parse_angles(cfg.angles);
        if (angles.size() < 2) {
            throw CLI::ValidationError("--angles", "custom model needs >= 2 angles");
        }
        return ModelSpec::single_tuple(cfg.lambda, std::move(angles));
    }
    throw CLI::ValidationError("--model", "unknown model: " + cfg.model);
}

CurveLaw make_curve_law(const CommonConfig& cfg) {
    CurveLaw law;
    law.degrees.clear();
    for (int d = 1; d <= cfg.degree_max; ++d) law.degrees.push_back(d);
    law.spread = cfg.spread;
    return law;
}

std::string config_echo(const std::map<std::string, std::string>& kv) {
    std::ostringstream out;
    for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
    return out.str();
}

void parallel_reps(int reps, int threads, const std::function<void(int)>& body) {
    if (threads <= 1) {
        for (int r = 0; r < reps; ++r) body(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) body(r);
        });
    }
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------

int cmd_simulate(const CommonConfig& cfg) {
    Rect core = Rect::square(cfg.window);
    ArtifactWriter artifacts;
    artifacts.dir = cfg.out;
    std::map<std::string, std::string> echo{
        {"command", "simulate"},           {"model", cfg.model},
        {"lambda", fmt_double(cfg.lambda)}, {"k", std::to_string(cfg.k)},
        {"window", fmt_double(cfg.window)}, {"seed", std::to_string(cfg.seed)},
    };

    SimResult result;
    SitePattern sites;
    double margin = cfg.margin;
    if (cfg.model == "germ-grain") {
        CurveLaw law = make_curve_law(cfg);
        std::vector<Angle> angles{Angle(0), Angle(kPi / 2), Angle(5 * kPi / 4)};
        std::vector<double> nu(3, cfg.lambda * 2.0);  // coarse bound for the margin
        if (margin < 0) margin = default_margin(solve_wstar(angles, nu)[2], cfg.k) + 4 * law.spread;
        GermGrain gg = germ_grain(law, cfg.lambda, core.grown(margin), cfg.seed, cfg.k);
        SimOptions opts;
        opts.horizon = core.grown(2 * margin);
        result = simulate(gg.motorcycles, gg.obstacles, cfg.k, opts);
        sites.window = core.grown(margin);
        sites.spec = nullptr;
        for (const auto& m : gg.motorcycles) {
            int idx = same_angle(m.angle, angles[0]) ? 0 : same_angle(m.angle, angles[1]) ? 1 : 2;
            sites.sites.push_back({m.origin, {idx}});
        }
        echo["degree_max"] = std::to_string(cfg.degree_max);
        echo["spread"] = fmt_double(cfg.spread);
    } else {
        ModelSpec spec = make_model(cfg);
        spec.require_valid();
        if (margin < 0) {
            WeightVector w = solve_wstar(spec);
            double wmax = 0;
            for (double x : w.w) wmax = std::max(wmax, x);
            margin = default_margin(wmax, cfg.k);
        }
        sites = sample_sites(spec, core.grown(margin), cfg.seed);
        SimOptions opts;
        opts.horizon = core.grown(2 * margin);
        result = simulate(sites, cfg.k, opts);
    }
    echo["margin"] = fmt_double(margin);

    MosaicGraph g = build_mosaic(result);
    CensusResult c = census(g, core);

    artifacts.write("sites.csv", sites_csv(sites));
    artifacts.write("events.csv", events_csv(result));
    artifacts.write("trails.csv", trails_csv(result));
    artifacts.write("vertices.csv", vertices_csv(g));
    artifacts.write("faces.csv", faces_csv(g));
    artifacts.write("mosaic.svg", mosaic_svg(g, core));

    std::ostringstream rep;
    rep << "census (core window " << fmt_double(cfg.window) << " x " << fmt_double(cfg.window)
        << ")\n";
    rep << "lambda0 " << fmt_double(c.lambda0) << "\n";
    rep << "lambda0_weighted " << fmt_double(c.lambda0_weighted) << "\n";
    rep << "lambda1 " << fmt_double(c.lambda1) << "\n";
    rep << "lambda2 " << fmt_double(c.lambda2) << "\n";
    rep << "euler_gap " << fmt_double(c.euler_gap) << "\n";
    rep << "mean_vertices_per_face " << fmt_double(c.mean_vertices_per_face) << "\n";
    for (const auto& [kind, intensity] : c.per_kind) {
        rep << "per_kind " << kind << " " << fmt_double(intensity) << "\n";
    }
    if (cfg.model == "tropical-lines") {
        rep << "expected lambda0 " << fmt_double((3.0 * cfg.k + 1) * cfg.lambda) << " lambda1 "
            << fmt_double(6.0 * cfg.k * cfg.lambda) << " lambda2 "
            << fmt_double((3.0 * cfg.k - 1) * cfg.lambda) << "\n";
    } else if (cfg.model == "rectangular") {
        rep << "expected lambda0 " << fmt_double((4.0 * cfg.k + 1) * cfg.lambda) << " lambda1 "
            << fmt_double(8.0 * cfg.k * cfg.lambda) << " lambda2 "
            << fmt_double((4.0 * cfg.k - 1) * cfg.lambda) << "\n";
    }
    artifacts.write("census.txt", rep.str());
    artifacts.finish(config_echo(echo));
    std::printf("%s", rep.str().c_str());
    std::printf("wrote %zu artifacts to %s\n", artifacts.manifest.size(), cfg.out.c_str());
    return 0;
}

int cmd_limit(const CommonConfig& cfg) {
    ModelSpec spec = make_model(cfg);
    spec.require_valid();
    WeightVector w = solve_wstar(spec);
    LineProcessSpec lp = limit_measure(spec, w);
    std::printf("angle  w*  nu  line_intensity  theta_mass\n");
    for (int i = 0; i < spec.num_angles(); ++i) {
        std::printf("%.9f  %.12f  %.6f  %.12f  %.12f\n", spec.angles()[i].radians(), w[i],
                    spec.nu(i), lp.entries[i].intensity, lp.theta_mass(i));
    }
    std::printf("Lambda %.12f\n", lp.total_intensity());
    if (cfg.model == "tropical-lines") {
        auto kc = tropical_line_constants(cfg.lambda);
        double rt2 = std::sqrt(2.0);
        std::printf("closed-form comparison\n");
        std::printf("mu_rect solver %.12f closed %.12f diff %.3g\n", lp.entries[0].intensity,
                    kc.mu_rect, std::abs(lp.entries[0].intensity - kc.mu_rect));
        std::printf("mu_diag solver %.12f closed %.12f diff %.3g\n", lp.entries[2].intensity,
                    kc.mu_diag, std::abs(lp.entries[2].intensity - kc.mu_diag));
        if (std::abs(cfg.lambda - 1.0) < 1e-12) {
            std::printf("p_hv %.9f expected %.9f\n", kc.mu_rect * kc.mu_rect,
                        2 * rt2 / (rt2 + 1));
            std::printf("p_hd %.9f expected %.9f\n", kc.mu_rect * kc.mu_diag / rt2,
                        (rt2 + 3) / (2 * (rt2 + 1)));
        }
    }
    return 0;
}

int cmd_converge(const CommonConfig& cfg, const std::string& k_list, int reps) {
    std::vector<int> ks;
    std::stringstream ss(k_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) ks.push_back(std::stoi(tok));
    }
    if (ks.empty()) throw CLI::ValidationError("--k-list", "no k values given");

    bool germ = cfg.model == "germ-grain";
    std::vector<Angle> angles{Angle(0), Angle(kPi / 2), Angle(5 * kPi / 4)};
    CurveLaw law = make_curve_law(cfg);
    std::vector<double> nu(3, cfg.lambda);
    if (germ) {
        RngStream probe(cfg.seed ^ 0x5bd1e995, 1);
        double arm_mean[3] = {0, 0, 0};
        int probes = 4000;
        for (int t = 0; t < probes; ++t) {
            TropCurve c = trop_curve(law.sample(probe));
            for (const auto& a : c.arms) arm_mean[static_cast<int>(a.dir)] += 1.0;
        }
        for (int d = 0; d < 3; ++d) nu[d] = cfg.lambda * arm_mean[d] / probes;
    } else if (cfg.model != "tropical-lines") {
        throw CLI::ValidationError("--model", "converge supports tropical-lines or germ-grain");
    }
    WeightVector w = solve_wstar(angles, nu);
    double wmax = std::max({w[0], w[1], w[2]});
    Rect window = Rect::square(cfg.window);

    std::printf("direction  k  mean_count  limit_mean  rel_err  ks_stat  L_ratio  strip_rate\n");
    for (int k : ks) {
        double margin = wmax * (2.4 * k + 8.0 * std::sqrt(static_cast<double>(k)));
        Rect sample_win = window.grown(margin);
        Rect len_core =
            window.grown(wmax * (1.0 * k + 2.0 * std::sqrt(static_cast<double>(k))));
        SimOptions opts;
        opts.horizon = window.grown(2 * margin);
        double intensity = cfg.lambda / k;
        // Chains crossing the window are counted on its maximal perpendicular
        // chord per direction: same lines in the limit, no boundary term.
        Vec2 center{(window.xmin + window.xmax) / 2, (window.ymin + window.ymax) / 2};
        Segment chords[3];
        for (int d = 0; d < 3; ++d) {
            Vec2 pv = angles[d].perp().unit();
            double h = projection_width(window, angles[d].perp());
            chords[d] = {center - (h / 2) * pv, center + (h / 2) * pv};
        }

        struct RepOut {
            double count[3] = {0, 0, 0};
            std::vector<double> offsets[3];
            double len_sum[3] = {0, 0, 0};
            long len_n[3] = {0, 0, 0};
            long strip_in[3] = {0, 0, 0};
            long strip_total[3] = {0, 0, 0};
        };
        std::vector<RepOut> outs(reps);
        parallel_reps(reps, cfg.threads, [&](int rep) {
            SimResult r = [&] {
                if (germ) {
                    GermGrain gg = germ_grain(law, intensity, sample_win,
                                              cfg.seed + 1000 * k + rep, k);
                    return simulate(gg.motorcycles, gg.obstacles, k, opts);
                }
                ModelSpec spec = ModelSpec::tropical_lines(intensity);
                SitePattern sites = sample_sites(spec, sample_win, cfg.seed + 1000 * k + rep);
                return simulate(sites, k, opts);
            }();
            RepOut& o = outs[rep];
            for (size_t i = 0; i < r.motorcycles.size(); ++i) {
                const auto& m = r.motorcycles[i];
                int d = same_angle(m.angle, angles[0]) ? 0
                        : same_angle(m.angle, angles[1]) ? 1 : 2;
                if (!r.trails[i].censored && len_core.contains(m.origin)) {
                    o.len_sum[d] += r.trails[i].length;
                    o.len_n[d] += 1;
                }
                if (!segment_intersection(r.trails[i].segment, chords[d])) continue;
                o.count[d] += 1;
                Vec2 perp = m.angle.perp().unit();
                o.offsets[d].push_back(dot(m.origin, perp));
                // Cut-off strip: origin in [k w* (-phi), 0] (+) window.
                Vec2 back = m.origin;
                double along = dot(back, m.angle.unit());
                double wlo = 1e18, whi = -1e18;
                for (Vec2 cpt : window.corners()) {
                    wlo = std::min(wlo, dot(cpt, m.angle.unit()));
                    whi = std::max(whi, dot(cpt, m.angle.unit()));
                }
                o.strip_total[d] += 1;
                if (along >= wlo - k * w[d] - 1e-9 && along <= whi + 1e-9) o.strip_in[d] += 1;
            }
        });

        for (int d = 0; d < 3; ++d) {
            double mean = 0;
            std::vector<double> offsets;
            double len_sum = 0;
            long len_n = 0, strip_in = 0, strip_total = 0;
            for (const auto& o : outs) {
                mean += o.count[d];
                offsets.insert(offsets.end(), o.offsets[d].begin(), o.offsets[d].end());
                len_sum += o.len_sum[d];
                len_n += o.len_n[d];
                strip_in += o.strip_in[d];
                strip_total += o.strip_total[d];
            }
            mean /= reps;
            double limit_mean = w[d] * nu[d] * projection_width(window, angles[d].perp());
            double rel = std::abs(mean - limit_mean) / limit_mean;
            // KS statistic of offsets against uniform over the projection range.
            Vec2 perp = angles[d].perp().unit();
            double lo = 1e18, hi = -1e18;
            for (Vec2 cpt : window.corners()) {
                lo = std::min(lo, dot(cpt, perp));
                hi = std::max(hi, dot(cpt, perp));
            }
            std::sort(offsets.begin(), offsets.end());
            double ks = 0;
            for (size_t i = 0; i < offsets.size(); ++i) {
                double u = (offsets[i] - lo) / (hi - lo);
                double f = (i + 1.0) / offsets.size();
                double f0 = i * 1.0 / offsets.size();
                ks = std::max({ks, std::abs(f - u), std::abs(u - f0)});
            }
            double lratio = len_n > 0 ? (len_sum / len_n) / (w[d] * k) : 0.0;
            double strip = strip_total > 0 ? static_cast<double>(strip_in) / strip_total : 0.0;
            std::printf("%9.6f %3d %10.4f %10.4f %8.4f %8.4f %8.4f %10.4f\n",
                        angles[d].radians(), k, mean, limit_mean, rel, ks, lratio, strip);
        }
    }
    return 0;
}

int cmd_polytropes(const CommonConfig& cfg, double mu_rect, double mu_diag, int reps) {
    if (mu_rect <= 0) {
        auto kc = tropical_line_constants(cfg.lambda);
        mu_rect = kc.mu_rect;
        if (mu_diag < 0) mu_diag = kc.mu_diag;
    }
    if (mu_diag < 0) mu_diag = 0.0;
    PolytropeDensities pd = polytrope_densities_integral(mu_rect, mu_diag);
    std::printf("integral densities (mu_rect %.9f, mu_diag %.9f)\n", mu_rect, mu_diag);
    for (const auto& [cls, v] : pd.p) std::printf("p%d %.9f\n", cls, v);
    std::printf("sum %.12f (target %.12f)\n", pd.sum(),
                mu_rect * mu_rect + std::sqrt(2.0) * mu_rect * mu_diag);
    std::printf("weighted_sum %.12f\n", pd.weighted_sum());
    std::printf("quadrature_error %.3g\n", pd.error_estimate);

    if (reps > 0) {
        LineProcessSpec lp;
        lp.entries = {{Angle(0), mu_rect}, {Angle(kPi / 2), mu_rect},
                      {Angle(5 * kPi / 4), mu_diag}};
        Rect box = Rect::square(36.0);
        Rect core{3, 3, 33, 33};
        std::map<int, std::vector<double>> samples;
        for (int rep = 0; rep < reps; ++rep) {
            auto lines = sample_line_process(lp, box, cfg.seed + rep);
            std::vector<Segment> segs;
            for (const auto& l : lines) {
                Segment s = clip_line(l, box);
                if (!s.degenerate()) segs.push_back(s);
            }
            auto pc = classify_polytropes(build_arrangement(segs), core);
            for (int cls = 3; cls <= 6; ++cls) {
                auto it = pc.intensity.find(cls);
                samples[cls].push_back(it == pc.intensity.end() ? 0.0 : it->second);
            }
        }
        std::printf("monte carlo (%d replicates)\n", reps);
        for (int cls = 3; cls <= 6; ++cls) {
            double mean = 0;
            for (double v : samples[cls]) mean += v;
            mean /= reps;
            double var = 0;
            for (double v : samples[cls]) var += (v - mean) * (v - mean);
            double se = std::sqrt(var / (reps - 1) / reps);
            std::printf("p%d %.6f +- %.6f (integral %.6f, gap %.2f se)\n", cls, mean, se,
                        pd.p.at(cls), se > 0 ? std::abs(mean - pd.p.at(cls)) / se : 0.0);
        }
    }

    const std::map<int, double> reference{{3, 0.429367312053161},
                                          {4, 2.22221756362048},
                                          {5, 0.267462936599565},
                                          {6, 0.0809521877267980}};
    std::printf("tabulated reference comparison\n");
    for (const auto& [cls, ref] : reference) {
        std::printf("p%d integral %.12f reference %.12f diff %.3g\n", cls, pd.p.at(cls), ref,
                    std::abs(pd.p.at(cls) - ref));
    }
    return 0;
}

int cmd_tropical(const CommonConfig& cfg, const std::string& poly_file,
                 const std::string& example) {
    TropPoly f = TropPoly::tropical_line();
    if (!poly_file.empty()) {
        std::ifstream in(poly_file);
        if (!in) throw std::runtime_error("cannot read " + poly_file);
        std::stringstream buf;
        buf << in.rdbuf();
        f = TropPoly::parse(buf.str());
    } else if (example == "cubic3") {
        f = TropPoly({{{0, 3}, 3}, {{0, 2}, 1}, {{1, 2}, 1}, {{0, 1}, 9}, {{1, 1}, 0},
                      {{2, 1}, 1}, {{0, 0}, 3}, {{1, 0}, 1}, {{2, 0}, 8}, {{3, 0}, 2}});
    } else if (example == "sample") {
        CurveLaw law = make_curve_law(cfg);
        RngStream s(cfg.seed, 1);
        f = law.sample(s);
    } else if (example != "line") {
        throw CLI::ValidationError("--example", "expected line | cubic3 | sample");
    }
    TropCurve c = trop_curve(f);
    ArtifactWriter artifacts;
    artifacts.dir = cfg.out;
    artifacts.write("poly.txt", f.format());
    artifacts.write("curve.svg", curve_svg(c));
    std::ostringstream rep;
    rep << "degree " << c.degree << "\n";
    rep << "coefficient_spread " << fmt_double(c.coeff_spread) << "\n";
    rep << "body_radius " << fmt_double(body_radius(c)) << "\n";
    rep << "vertices " << c.vertices.size() << "\n";
    rep << "bounded_edges " << c.bounded_edges.size() << "\n";
    for (const auto& a : c.arms) {
        const char* dir = a.dir == ArmDir::east ? "east"
                          : a.dir == ArmDir::north ? "north" : "southwest";
        rep << "arm " << dir << " apex " << fmt_double(a.apex.x) << " " << fmt_double(a.apex.y)
            << " mult " << a.mult << "\n";
    }
    rep << "subdivision_cells " << c.subdivision.cells.size() << "\n";
    for (const auto& cell : c.subdivision.cells) {
        rep << "cell";
        for (auto [i, j] : cell.hull) rep << " (" << i << "," << j << ")";
        rep << "\n";
    }
    artifacts.write("curve.txt", rep.str());
    artifacts.finish(config_echo({{"command", "tropical"},
                                  {"seed", std::to_string(cfg.seed)},
                                  {"example", example},
                                  {"poly", poly_file}}));
    std::printf("%s", rep.str().c_str());
    return 0;
}

int cmd_armbody(const CommonConfig& cfg, double l_horiz, double l_diag, double l_vert,
                const std::string& extra, int mc_reps) {
    auto kc = tropical_line_constants(cfg.lambda);
    ArmBodyInputs in;
    in.lambda = 1.0;
    in.mu_horiz = kc.mu_rect;
    in.mu_vert = kc.mu_rect;
    in.mu_diag = kc.mu_diag;
    if (l_horiz > 0) in.lengths[0.0] += l_horiz;
    if (l_diag > 0) in.lengths[kPi / 4] += l_diag;
    if (l_vert > 0) in.lengths[kPi / 2] += l_vert;
    std::stringstream ss(extra);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) continue;
        in.lengths[std::stod(tok.substr(0, colon))] += std::stod(tok.substr(colon + 1));
    }
    double m = arm_body_mean(in);
    std::printf("M %.9f\n", m);

    if (mc_reps > 0) {
        // Place the body segments around the origin and count crossings by the
        // sampled limit line process.
        std::vector<Segment> body;
        double offset = 0.0;
        for (const auto& [orient, len] : in.lengths) {
            Vec2 d{std::cos(orient), std::sin(orient)};
            Vec2 base{offset, offset * 0.3};
            body.push_back({base, base + len * d});
            offset += 2.0;
        }
        LineProcessSpec lp;
        lp.entries = {{Angle(0), kc.mu_rect}, {Angle(kPi / 2), kc.mu_rect},
                      {Angle(5 * kPi / 4), kc.mu_diag}};
        Rect win{-8, -8, 8 + offset, 8 + offset};
        double total = 0;
        for (int rep = 0; rep < mc_reps; ++rep) {
            for (const auto& l : sample_line_process(lp, win, cfg.seed + rep)) {
                Segment chord = clip_line(l, win);
                if (chord.degenerate()) continue;
                for (const auto& seg : body) {
                    if (segment_intersection(chord, seg)) total += 1;
                }
            }
        }
        double mc = total / mc_reps;
        std::printf("M_monte_carlo %.9f (reps %d, diff %.3g)\n", mc, mc_reps,
                    std::abs(mc - m));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iterated Gilbert mosaics and tropical plane curves"};
    app.require_subcommand(1);
    app.set_config("--config", "", "plain key=value config file");
    app.allow_config_extras(false);

    CommonConfig cfg;
    std::string k_list = "5,20,50";
    int reps = 100;
    double mu_rect = -1, mu_diag = -1;
    std::string poly_file, example = "line", extra;
    double l_horiz = 0, l_diag = 0, l_vert = 0;
    int mc_reps = 0;

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run one mosaic simulation");
    add_common(simulate_cmd, cfg, true, true);
    simulate_cmd->add_option("--k", cfg.k, "lives per motorcycle")->capture_default_str();
    simulate_cmd->add_option("--window", cfg.window, "square window side")
        ->capture_default_str();
    simulate_cmd->add_option("--margin", cfg.margin, "sampling margin (default: from w*)");
    simulate_cmd->add_option("--degree-max", cfg.degree_max, "germ-grain max degree")
        ->capture_default_str();
    simulate_cmd->add_option("--spread", cfg.spread, "germ-grain coefficient spread")
        ->capture_default_str();

    CLI::App* limit_cmd = app.add_subcommand("limit", "solve w* and the limit measure");
    add_common(limit_cmd, cfg);

    CLI::App* converge_cmd =
        app.add_subcommand("converge", "compare G^k(1/k) against the limit process");
    add_common(converge_cmd, cfg);
    converge_cmd->add_option("--k-list", k_list, "comma-separated k values")
        ->capture_default_str();
    converge_cmd->add_option("--reps", reps, "replicates per k")->capture_default_str();
    converge_cmd->add_option("--window", cfg.window, "square window side")
        ->capture_default_str();
    converge_cmd->add_option("--threads", cfg.threads, "worker threads")
        ->capture_default_str();
    converge_cmd->add_option("--degree-max", cfg.degree_max, "germ-grain max degree")
        ->capture_default_str();
    converge_cmd->add_option("--spread", cfg.spread, "germ-grain coefficient spread")
        ->capture_default_str();

    CLI::App* poly_cmd =
        app.add_subcommand("polytropes", "face-type densities of the limit mosaic");
    add_common(poly_cmd, cfg, false);
    poly_cmd->add_option("--mu-rect", mu_rect, "rectangular line intensity");
    poly_cmd->add_option("--mu-diag", mu_diag, "diagonal line intensity");
    poly_cmd->add_option("--reps", reps, "Monte Carlo replicates (0 disables)")
        ->capture_default_str();

    CLI::App* trop_cmd = app.add_subcommand("tropical", "curve and subdivision export");
    add_common(trop_cmd, cfg, false);
    trop_cmd->add_option("--poly", poly_file, "polynomial file with 'i j c' lines");
    trop_cmd->add_option("--example", example, "line | cubic3 | sample")
        ->capture_default_str();
    trop_cmd->add_option("--degree-max", cfg.degree_max, "sample law max degree")
        ->capture_default_str();
    trop_cmd->add_option("--spread", cfg.spread, "sample law coefficient spread")
        ->capture_default_str();

    CLI::App* arm_cmd = app.add_subcommand("armbody", "mean arm crossings of a body");
    add_common(arm_cmd, cfg, false);
    arm_cmd->add_option("--l-horiz", l_horiz, "horizontal body length");
    arm_cmd->add_option("--l-diag", l_diag, "diagonal body length");
    arm_cmd->add_option("--l-vert", l_vert, "vertical body length");
    arm_cmd->add_option("--lengths", extra, "extra orientation:length pairs, comma separated");
    arm_cmd->add_option("--mc", mc_reps, "Monte Carlo replicates (0 disables)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(cfg);
        if (limit_cmd->parsed()) return cmd_limit(cfg);
        if (converge_cmd->parsed()) return cmd_converge(cfg, k_list, reps);
        if (poly_cmd->parsed()) return cmd_polytropes(cfg, mu_rect, mu_diag, reps);
        if (trop_cmd->parsed()) return cmd_tropical(cfg, poly_file, example);
        if (arm_cmd->parsed()) return cmd_armbody(cfg, l_horiz, l_diag, l_vert, extra, mc_reps);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
