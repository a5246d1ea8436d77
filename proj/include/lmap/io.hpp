// Polygon and report serialization (JSON) and the SVG figure emitter.
#pragma once

#include <iosfwd>
#include <string>

#include "lmap/search.hpp"

namespace lmap {

// {"vertices": [[x, y], ...]}; orientation free.
Polygon read_polygon_json(std::istream& in, const BuildOptions& opts = {});
Polygon read_polygon_file(const std::string& path, const BuildOptions& opts = {});
std::string polygon_to_json(const Polygon& P);

// {"polygon": {...}, "lmaps": [{"corners": [[x,y] x4], "area": a,
//  "source": s, "flags": {...}}], "map_index": i}
std::string report_to_json(const Polygon& P, const LmapReport& report);

// Polygon filled light, every LMAP stroked in a deterministic color order by
// area rank, the MAP stroked heaviest. viewBox fits the polygon bounding box
// plus a 5% margin.
std::string report_to_svg(const Polygon& P, const LmapReport& report);

}  // namespace lmap
