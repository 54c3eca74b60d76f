#include "gilbert/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gilbert {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sites_csv(const SitePattern& sites) {
    std::ostringstream out;
    out << "x,y,angle_indices\n";
    for (const auto& s : sites.sites) {
        out << fmt_double(s.pos.x) << "," << fmt_double(s.pos.y) << ",";
        for (size_t i = 0; i < s.angle_indices.size(); ++i) {
            if (i) out << ";";
            out << s.angle_indices[i];
        }
        out << "\n";
    }
    return out.str();
}

std::string events_csv(const SimResult& sim) {
    std::ostringstream out;
    out << "victim_id,killer_kind,killer_id,x,y,victim_age,killer_age,order_index,fatal\n";
    for (const auto& e : sim.events) {
        out << e.victim_id << ","
            << (e.killer_kind == KillerKind::motorcycle ? "motorcycle" : "obstacle") << ","
            << e.killer_id << "," << fmt_double(e.location.x) << "," << fmt_double(e.location.y)
            << "," << fmt_double(e.victim_age) << "," << fmt_double(e.killer_age) << ","
            << e.order_index << "," << (e.fatal ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string trails_csv(const SimResult& sim) {
    std::ostringstream out;
    out << "id,x0,y0,x1,y1,angle,censored\n";
    for (size_t i = 0; i < sim.trails.size(); ++i) {
        const auto& t = sim.trails[i];
        out << t.motorcycle_id << "," << fmt_double(t.segment.a.x) << ","
            << fmt_double(t.segment.a.y) << "," << fmt_double(t.segment.b.x) << ","
            << fmt_double(t.segment.b.y) << ","
            << fmt_double(sim.motorcycles[i].angle.radians()) << "," << (t.censored ? 1 : 0)
            << "\n";
    }
    return out.str();
}

std::string vertices_csv(const MosaicGraph& g) {
    std::ostringstream out;
    out << "x,y,kind,degree\n";
    for (const auto& v : g.verts) {
        out << fmt_double(v.p.x) << "," << fmt_double(v.p.y) << "," << to_string(v.kind) << ","
            << v.degree << "\n";
    }
    return out.str();
}

std::string faces_csv(const MosaicGraph& g) {
    std::ostringstream out;
    out << "face_id,class,area,centroid_x,centroid_y\n";
    for (size_t i = 0; i < g.faces.size(); ++i) {
        const auto& f = g.faces[i];
        if (!f.census_ok) continue;
        out << i << "," << f.proper_vertices << "," << fmt_double(f.signed_area) << ","
            << fmt_double(f.centroid.x) << "," << fmt_double(f.centroid.y) << "\n";
    }
    return out.str();
}

namespace {

const char* vertex_color(VertexKind k) {
    switch (k) {
        case VertexKind::site: return "#d62728";
        case VertexKind::grave: return "#1f77b4";
        case VertexKind::crossing: return "#2ca02c";
        case VertexKind::complex_vertex: return "#9467bd";
        case VertexKind::flat: return "#7f7f7f";
        case VertexKind::horizon: return "#bcbd22";
    }
    return "#000000";
}

std::string svg_header(double xmin, double ymin, double w, double h) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt_double(xmin) << " "
        << fmt_double(ymin) << " " << fmt_double(w) << " " << fmt_double(h) << "\">\n";
    // Flip y so the picture is in the usual orientation.
    out << "<g transform=\"scale(1,-1) translate(0," << fmt_double(-(2 * ymin + h)) << ")\">\n";
    return out.str();
}

}  // namespace

std::string mosaic_svg(const MosaicGraph& g, const Rect& viewbox) {
    std::ostringstream out;
    double w = viewbox.width(), h = viewbox.height();
    out << svg_header(viewbox.xmin, viewbox.ymin, w, h);
    double stroke = std::max(w, h) / 800.0;
    out << "<g stroke=\"#333333\" stroke-width=\"" << fmt_double(stroke) << "\">\n";
    for (size_t e = 0; e < g.edges.size(); ++e) {
        Segment s = g.edge_segment(static_cast<int>(e));
        out << "<line x1=\"" << fmt_double(s.a.x) << "\" y1=\"" << fmt_double(s.a.y)
            << "\" x2=\"" << fmt_double(s.b.x) << "\" y2=\"" << fmt_double(s.b.y) << "\"/>\n";
    }
    out << "</g>\n";
    double r = stroke * 2.0;
    for (const auto& v : g.verts) {
        out << "<circle cx=\"" << fmt_double(v.p.x) << "\" cy=\"" << fmt_double(v.p.y)
            << "\" r=\"" << fmt_double(r) << "\" fill=\"" << vertex_color(v.kind) << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string curve_svg(const TropCurve& c, double pad) {
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    for (const auto& v : c.vertices) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    double arm_len = std::max(xmax - xmin, ymax - ymin) + pad;
    xmin -= pad + arm_len;
    ymin -= pad + arm_len;
    xmax += pad + arm_len;
    ymax += pad + arm_len;

    std::ostringstream out;
    out << svg_header(xmin, ymin, xmax - xmin, ymax - ymin);
    double stroke = (xmax - xmin) / 300.0;
    out << "<g stroke=\"#000000\" stroke-width=\"" << fmt_double(3 * stroke)
        << "\" stroke-linecap=\"round\">\n";
    for (const auto& e : c.bounded_edges) {
        out << "<line x1=\"" << fmt_double(e.a.x) << "\" y1=\"" << fmt_double(e.a.y)
            << "\" x2=\"" << fmt_double(e.b.x) << "\" y2=\"" << fmt_double(e.b.y) << "\"/>\n";
    }
    out << "</g>\n<g stroke=\"#555555\" stroke-width=\"" << fmt_double(stroke) << "\">\n";
    for (const auto& a : c.arms) {
        Vec2 tip = a.apex + arm_len * arm_unit(a.dir);
        out << "<line x1=\"" << fmt_double(a.apex.x) << "\" y1=\"" << fmt_double(a.apex.y)
            << "\" x2=\"" << fmt_double(tip.x) << "\" y2=\"" << fmt_double(tip.y) << "\"/>\n";
    }
    out << "</g>\n";
    for (const auto& a : c.arms) {
        Vec2 lab = a.apex + (0.5 * arm_len) * arm_unit(a.dir);
        out << "<text x=\"" << fmt_double(lab.x) << "\" y=\"" << fmt_double(-lab.y)
            << "\" transform=\"scale(1,-1)\" font-size=\"" << fmt_double(10 * stroke) << "\">"
            << a.mult << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string content_hash(const std::string& bytes) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void ArtifactWriter::write(const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/" + name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
    out << content;
    manifest.push_back(content_hash(content) + "  " + name);
}

void ArtifactWriter::finish(const std::string& config_echo) {
    std::ostringstream out;
    out << "# resolved configuration\n" << config_echo << "# artifacts\n";
    for (const auto& line : manifest) out << line << "\n";
    std::filesystem::create_directories(dir);
    std::ofstream f(dir + "/manifest.txt", std::ios::binary);
    f << out.str();
}

}  // namespace gilbert
