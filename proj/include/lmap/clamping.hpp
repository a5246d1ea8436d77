// Clamping bounds: the zeta boundary portions that confine LMAP corners, the
// u (+) u' mid-regions, the block regions for anchored narrow corners, and
// the H/S structures behind the even-corner search.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lmap/disprod.hpp"
#include "lmap/polygon.hpp"

namespace lmap {

// Boundary portion [Z_a^a' |> Z_b^b'] with its defining edge indices.
struct Zeta {
  BoundaryPortion portion;
  int a, ap, b, bp;
};

// Generalized clamping bound for any distinct unit pair. Falls back on the
// farthest-vertex rows when a direct chasing relation is missing; reduces to
// the plain bound when u is chasing u'.
Zeta zeta(const Polygon& P, const ZTable& Z, Unit u, Unit uprime);

// The set of midpoints {M(X, X') : X in u, X' in u'} - an open parallelogram,
// an open segment, or a single point.
struct MidRegion {
  enum class Shape { parallelogram, segment, point };
  Shape shape;
  std::vector<Vec2> corners;  // 4 / 2 / 1 points
};
MidRegion mid_region(const Polygon& P, Unit u, Unit uprime);

// Region that must contain an anchored narrow corner whose neighbors lie in
// (u, u'). Represented by its boundary curves plus the two separator lines
// parallel to the reference edge used by the sweep.
struct Block {
  enum class Kind { edge_edge, vertex_vertex, vertex_edge, edge_vertex };
  Kind kind;
  std::vector<Vec2> corners;      // edge_edge: parallelogram corners
  std::vector<Vec2> curve;        // vertex_vertex: reflected zeta polyline
  std::vector<Vec2> side_lo;      // mixed: 2-scaled segment about the earlier Z
  std::vector<Vec2> side_hi;      // mixed: 2-scaled segment about the later Z
  std::vector<Vec2> reflected_a;  // mixed: zeta reflected about the first midpoint
  std::vector<Vec2> reflected_b;  // mixed: zeta reflected about the second midpoint
  int ref_edge = -1;              // separators are parallel to this edge
  double band_lo = 0.0, band_hi = 0.0;  // signed distances of the separators to it
};
Block block(const Polygon& P, const ZTable& Z, Unit u, Unit uprime);

// H_V: units strictly inside (D_{k-1} |> D_k) for vertex k.
std::vector<Unit> h_set(const Polygon& P, int k);

// S: every ordered pair (u, u') with u a vertex and u' in H_u, or u' a
// vertex and u in H_{u'}; covers all distinct non-incident pairs with the
// neither-chasing relation. O(n) pairs.
std::vector<std::pair<Unit, Unit>> s_set(const Polygon& P);

}  // namespace lmap
