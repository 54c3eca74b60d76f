#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gilbert/mosaic.hpp"
#include "gilbert/motorsim.hpp"
#include "gilbert/procs.hpp"
#include "gilbert/tropical.hpp"

namespace gilbert {

// Deterministic double formatting (%.17g round-trip) for diffable artifacts.
std::string fmt_double(double v);

std::string sites_csv(const SitePattern& sites);
std::string events_csv(const SimResult& sim);
std::string trails_csv(const SimResult& sim);
std::string vertices_csv(const MosaicGraph& g);
std::string faces_csv(const MosaicGraph& g);

std::string mosaic_svg(const MosaicGraph& g, const Rect& viewbox);
std::string curve_svg(const TropCurve& c, double pad = 1.0);

// FNV-1a 64 over the content bytes, hex encoded.
std::string content_hash(const std::string& bytes);

// Writes a file and appends "<hash>  <name>" to the manifest list.
struct ArtifactWriter {
    std::string dir;
    std::vector<std::string> manifest;
    void write(const std::string& name, const std::string& content);
    void finish(const std::string& config_echo);  // writes manifest.txt
};

}  // namespace gilbert
