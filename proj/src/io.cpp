#include "lmap/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lmap {

using nlohmann::json;

Polygon read_polygon_json(std::istream& in, const BuildOptions& opts) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw InputError("polygon JSON needs a \"vertices\" array");
  std::vector<Vec2> pts;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw InputError("every vertex must be a [x, y] number pair");
    pts.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return Polygon::build(std::move(pts), opts);
}

Polygon read_polygon_file(const std::string& path, const BuildOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_polygon_json(in, opts);
}

namespace {

json vertices_json(const Polygon& P) {
  json arr = json::array();
  for (const Vec2& v : P.vertices()) arr.push_back(json::array({v.x, v.y}));
  return arr;
}

json candidate_json(const Candidate& c) {
  json corners = json::array();
  for (const Vec2& v : c.pgram.c) corners.push_back(json::array({v.x, v.y}));
  json sources = json::array();
  for (Source s : c.sources) sources.push_back(to_string(s));
  return json{{"corners", corners},
              {"area", c.pgram.area()},
              {"source", to_string(c.source)},
              {"flags",
               {{"inscribed", c.inscribed},
                {"non_slidable", c.non_slidable},
                {"local_max_probe", to_string(c.probe)},
                {"sources", sources},
                {"anchor", c.anchor}}}};
}

}  // namespace

std::string polygon_to_json(const Polygon& P) {
  return json{{"vertices", vertices_json(P)}}.dump(2) + "\n";
}

std::string report_to_json(const Polygon& P, const LmapReport& report) {
  json lmaps = json::array();
  for (const Candidate& c : report.lmaps) lmaps.push_back(candidate_json(c));
  json j{{"polygon", {{"vertices", vertices_json(P)}}},
         {"lmaps", lmaps},
         {"map_index", report.map_index}};
  if (!report.rejected.empty()) {
    json rej = json::array();
    for (const Candidate& c : report.rejected) rej.push_back(candidate_json(c));
    j["rejected"] = rej;
  }
  j["counts"] = {{"narrow_triples", report.counts.narrow_triples},
                 {"broad_triples", report.counts.broad_triples},
                 {"even_triples", report.counts.even_triples},
                 {"emitted", report.counts.emitted}};
  j["elapsed_ms"] = report.elapsed_ms;
  return j.dump(2) + "\n";
}

namespace {

// Fixed palette cycled in area rank order.
const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

void svg_poly(std::ostream& os, const std::vector<Vec2>& pts, double ybase,
              const std::string& style) {
  os << "  <polygon points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k) os << ' ';
    os << pts[k].x << ',' << (ybase - pts[k].y);
  }
  os << "\" " << style << "/>\n";
}

}  // namespace

std::string report_to_svg(const Polygon& P, const LmapReport& report) {
  double xmin = P.vertex(0).x, xmax = xmin, ymin = P.vertex(0).y, ymax = ymin;
  for (const Vec2& v : P.vertices()) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const double margin = 0.05 * std::max(xmax - xmin, ymax - ymin);
  xmin -= margin;
  xmax += margin;
  ymin -= margin;
  ymax += margin;
  const double ybase = ymin + ymax;  // y-up data into y-down SVG coordinates

  std::ostringstream os;
  os.precision(9);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin << ' ' << ymin << ' '
     << (xmax - xmin) << ' ' << (ymax - ymin) << "\">\n";
  const double w = (xmax - xmin) / 400.0;  // stroke width in user units
  svg_poly(os, P.vertices(), ybase,
           "fill=\"#f0f0f5\" stroke=\"#404040\" stroke-width=\"" + std::to_string(w) + "\"");

  // Area rank order: largest first, deterministic tie break.
  std::vector<int> order(report.lmaps.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = int(k);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return report.lmaps[a].pgram.area() > report.lmaps[b].pgram.area();
  });
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const int idx = order[rank];
    const bool is_map = idx == report.map_index;
    const std::vector<Vec2> pts(report.lmaps[idx].pgram.c.begin(),
                                report.lmaps[idx].pgram.c.end());
    svg_poly(os, pts, ybase,
             "fill=\"none\" stroke=\"" + std::string(kPalette[rank % 8]) +
                 "\" stroke-width=\"" + std::to_string(is_map ? 2.5 * w : 1.2 * w) + "\"");
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lmap
