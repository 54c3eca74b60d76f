#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gilbert/limits.hpp"
#include "gilbert/mosaic.hpp"
#include "gilbert/motorsim.hpp"
#include "gilbert/procs.hpp"
#include "gilbert/tropical.hpp"

namespace py = pybind11;
using namespace gilbert;

namespace {

ModelSpec model_by_name(const std::string& name, double lambda) {
    if (name == "tropical-lines") return ModelSpec::tropical_lines(lambda);
    if (name == "rectangular") return ModelSpec::rectangular(lambda);
    throw std::invalid_argument("unknown model: " + name);
}

}  // namespace

PYBIND11_MODULE(_gilbertsim, m) {
    m.doc() = "iterated Gilbert mosaics and tropical plane curves";

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>())
        .def_readonly("x", &Vec2::x)
        .def_readonly("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });

    py::class_<Rect>(m, "Rect")
        .def(py::init<double, double, double, double>())
        .def_static("square", &Rect::square)
        .def("area", &Rect::area)
        .def("grown", &Rect::grown);

    py::class_<KillRegion>(m, "KillRegion")
        .def_property_readonly("vertices", [](const KillRegion& r) { return r.vertices; })
        .def_property_readonly("is_triangle", [](const KillRegion& r) {
            return r.kind == KillRegion::Kind::triangle;
        });

    m.def("kill_region", [](double phi, double psi, double w_phi, double w_psi) {
        return kill_region(Angle(phi), Angle(psi), w_phi, w_psi);
    });
    m.def("region_area", &region_area);
    m.def("shoelace_area",
          [](const std::vector<Vec2>& pts) { return shoelace_area(pts); });

    py::class_<ModelSpec>(m, "ModelSpec")
        .def_static("tropical_lines", &ModelSpec::tropical_lines)
        .def_static("rectangular", &ModelSpec::rectangular)
        .def("mu_of", &ModelSpec::mu_of)
        .def("nu", &ModelSpec::nu)
        .def("mean_multiplicity", &ModelSpec::mean_multiplicity)
        .def_property_readonly("angles", [](const ModelSpec& s) {
            std::vector<double> out;
            for (const auto& a : s.angles()) out.push_back(a.radians());
            return out;
        });
    m.def("model", &model_by_name, py::arg("name"), py::arg("lambda_") = 1.0);

    py::class_<WeightVector>(m, "WeightVector")
        .def_property_readonly("w", [](const WeightVector& w) { return w.w; });
    m.def("solve_wstar", [](const ModelSpec& s) { return solve_wstar(s); });
    m.def("expected_crossings",
          [](const ModelSpec& s, const std::vector<double>& w, int phi_index) {
              return expected_crossings(s, WeightVector{w}, phi_index);
          });

    py::class_<LineProcessSpec>(m, "LineProcessSpec")
        .def_property_readonly("intensities", [](const LineProcessSpec& lp) {
            std::vector<std::pair<double, double>> out;
            for (const auto& e : lp.entries) out.push_back({e.phi.radians(), e.intensity});
            return out;
        })
        .def("total_intensity", &LineProcessSpec::total_intensity);
    m.def("limit_measure",
          [](const ModelSpec& s, const WeightVector& w) { return limit_measure(s, w); });

    py::class_<PolytropeDensities>(m, "PolytropeDensities")
        .def_readonly("error_estimate", &PolytropeDensities::error_estimate)
        .def_property_readonly("p", [](const PolytropeDensities& pd) { return pd.p; })
        .def("sum", &PolytropeDensities::sum)
        .def("weighted_sum", &PolytropeDensities::weighted_sum);
    m.def("polytrope_densities_integral", [](double mu_rect, double mu_diag) {
        return polytrope_densities_integral(mu_rect, mu_diag);
    });
    m.def("tropical_line_constants", [](double lambda) {
        auto k = tropical_line_constants(lambda);
        return std::make_pair(k.mu_rect, k.mu_diag);
    });
    m.def("rectangle_face_census", [](long a, long b, long c) {
        FaceCounts fc = rectangle_face_census(a, b, c);
        return std::make_tuple(fc.triangles, fc.quads, fc.pentagons, fc.hexagons);
    });
    m.def("arm_body_mean", [](const std::map<double, double>& lengths, double lambda) {
        auto k = tropical_line_constants(1.0);
        ArmBodyInputs in;
        in.lengths = lengths;
        in.mu_horiz = k.mu_rect;
        in.mu_vert = k.mu_rect;
        in.mu_diag = k.mu_diag;
        in.lambda = lambda;
        return arm_body_mean(in);
    }, py::arg("lengths"), py::arg("lambda_") = 1.0);

    py::class_<SitePattern>(m, "SitePattern")
        .def_property_readonly("positions", [](const SitePattern& p) {
            std::vector<std::pair<double, double>> out;
            for (const auto& s : p.sites) out.push_back({s.pos.x, s.pos.y});
            return out;
        })
        .def("__len__", [](const SitePattern& p) { return p.sites.size(); });
    m.def("sample_sites", [](const ModelSpec& s, const Rect& w, uint64_t seed) {
        return sample_sites(s, w, seed);
    }, py::keep_alive<0, 1>());

    py::class_<CollisionEvent>(m, "CollisionEvent")
        .def_readonly("victim_id", &CollisionEvent::victim_id)
        .def_readonly("killer_id", &CollisionEvent::killer_id)
        .def_readonly("victim_age", &CollisionEvent::victim_age)
        .def_readonly("killer_age", &CollisionEvent::killer_age)
        .def_readonly("fatal", &CollisionEvent::fatal)
        .def_readonly("order_index", &CollisionEvent::order_index);

    py::class_<SimResult>(m, "SimResult")
        .def_property_readonly("events", [](const SimResult& r) { return r.events; })
        .def("death_count", &SimResult::death_count)
        .def("trail_lengths", [](const SimResult& r) {
            std::vector<double> out;
            for (const auto& t : r.trails) out.push_back(t.length);
            return out;
        })
        .def("censored", [](const SimResult& r) {
            std::vector<bool> out;
            for (const auto& t : r.trails) out.push_back(t.censored);
            return out;
        });
    m.def("simulate",
          [](const SitePattern& sites, int k, const Rect& horizon) {
              SimOptions opts;
              opts.horizon = horizon;
              return simulate(sites, k, opts);
          });

    py::class_<CensusResult>(m, "CensusResult")
        .def_readonly("lambda0", &CensusResult::lambda0)
        .def_readonly("lambda0_weighted", &CensusResult::lambda0_weighted)
        .def_readonly("lambda1", &CensusResult::lambda1)
        .def_readonly("lambda2", &CensusResult::lambda2)
        .def_readonly("euler_gap", &CensusResult::euler_gap)
        .def_readonly("mean_vertices_per_face", &CensusResult::mean_vertices_per_face);

    py::class_<MosaicGraph>(m, "MosaicGraph")
        .def_property_readonly("num_vertices",
                               [](const MosaicGraph& g) { return g.verts.size(); })
        .def_property_readonly("num_edges", [](const MosaicGraph& g) { return g.edges.size(); })
        .def("bounded_face_count", &MosaicGraph::bounded_face_count)
        .def("euler_characteristics", &MosaicGraph::euler_characteristics);
    m.def("build_mosaic", [](const SimResult& r) { return build_mosaic(r); });
    m.def("census", [](const MosaicGraph& g, const Rect& core) { return census(g, core); });

    py::class_<TropPoly>(m, "TropPoly")
        .def(py::init([](const std::map<std::pair<int, int>, double>& coeffs) {
            return TropPoly(coeffs);
        }))
        .def_static("tropical_line", &TropPoly::tropical_line, py::arg("cx") = 0.0,
                    py::arg("cy") = 0.0, py::arg("c0") = 0.0)
        .def_static("parse", &TropPoly::parse)
        .def("format", &TropPoly::format)
        .def("degree", &TropPoly::degree)
        .def("is_standard", &TropPoly::is_standard)
        .def("coefficient_spread", &TropPoly::coefficient_spread);

    m.def("trop_eval", [](const TropPoly& f, double x, double y) {
        TropEval e = trop_eval(f, x, y);
        return std::make_tuple(e.value, e.argmin, e.is_zero());
    });

    py::class_<TropCurve>(m, "TropCurve")
        .def_property_readonly("vertices", [](const TropCurve& c) { return c.vertices; })
        .def_property_readonly("degree", [](const TropCurve& c) { return c.degree; })
        .def("arm_count", [](const TropCurve& c, int dir) {
            return c.arm_count(static_cast<ArmDir>(dir));
        })
        .def_property_readonly("arms", [](const TropCurve& c) {
            std::vector<std::tuple<double, double, int, int>> out;
            for (const auto& a : c.arms) {
                out.push_back({a.apex.x, a.apex.y, static_cast<int>(a.dir), a.mult});
            }
            return out;
        });
    m.def("trop_curve", [](const TropPoly& f) { return trop_curve(f); });
    m.def("body_radius", [](const TropCurve& c) { return body_radius(c); });
    m.def("stable_intersection", [](const TropCurve& a, const TropCurve& b, uint64_t seed) {
        std::vector<std::tuple<double, double, long>> out;
        for (const auto& p : stable_intersection(a, b, seed)) {
            out.push_back({p.point.x, p.point.y, p.mult});
        }
        return out;
    });
}
