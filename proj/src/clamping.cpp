#include "lmap/clamping.hpp"

#include <cassert>
#include <string>

namespace lmap {

Zeta zeta(const Polygon& P, const ZTable& Z, Unit u, Unit uprime) {
  u.index = P.mod(u.index);
  uprime.index = P.mod(uprime.index);
  if (u == uprime) throw SameUnit("zeta needs two distinct units");
  const auto [bu, fu] = back_forw(P, u);
  const auto [bp, fp] = back_forw(P, uprime);

  const int a = bu;
  const int ap = (bu != bp && edge_chasing(P, bu, bp)) ? bp : P.mod(P.farthest_vertex(a) - 1);
  const int bprime = fp;
  const int b = (fu != fp && edge_chasing(P, fu, fp)) ? fu
                                                      : P.farthest_vertex(bprime);
  assert(edge_chasing(P, a, ap));
  assert(edge_chasing(P, b, bprime));
  return Zeta{{Z.at(a, ap), Z.at(b, bprime), true, true}, a, ap, b, bprime};
}

MidRegion mid_region(const Polygon& P, Unit u, Unit uprime) {
  u.index = P.mod(u.index);
  uprime.index = P.mod(uprime.index);
  if (u == uprime) throw SameUnit("mid_region needs two distinct units");
  const int i = u.index, j = uprime.index;
  const Vec2 vi = P.vertex(i), vi1 = P.vertex(i + 1);
  const Vec2 vj = P.vertex(j), vj1 = P.vertex(j + 1);
  if (u.is_edge() && uprime.is_edge())
    return {MidRegion::Shape::parallelogram,
            {midpoint(vi, vj), midpoint(vi, vj1), midpoint(vi1, vj), midpoint(vi1, vj1)}};
  if (u.is_edge())  // e_i (+) v_j
    return {MidRegion::Shape::segment, {midpoint(vi, vj), midpoint(vi1, vj)}};
  if (uprime.is_edge())  // v_i (+) e_j
    return {MidRegion::Shape::segment, {midpoint(vi, vj), midpoint(vi, vj1)}};
  return {MidRegion::Shape::point, {midpoint(vi, vj)}};
}

namespace {

std::vector<Vec2> reflect_polyline(const std::vector<Vec2>& pts, Vec2 O) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const Vec2& p : pts) out.push_back(reflect(p, O));
  return out;
}

}  // namespace

Block block(const Polygon& P, const ZTable& Z, Unit u, Unit uprime) {
  u.index = P.mod(u.index);
  uprime.index = P.mod(uprime.index);
  if (unit_chasing(P, u, uprime) != UnitRelation::u_chases_uprime)
    throw NotChasing("block(u,u') requires u chasing u'");
  const int i = u.index, j = uprime.index;
  Block blk;

  if (u.is_edge() && uprime.is_edge()) {
    blk.kind = Block::Kind::edge_edge;
    const Vec2 z = Z.at(i, j).point;
    for (const Vec2& c : mid_region(P, u, uprime).corners) blk.corners.push_back(scale(c, 2.0, z));
    blk.ref_edge = i;
    const double dj = P.line_dist(P.vertex(j), i), dj1 = P.line_dist(P.vertex(j + 1), i);
    const double h = P.line_dist(z, i);
    blk.band_lo = std::min(dj, dj1) - h;
    blk.band_hi = std::max(dj, dj1) - h;
    return blk;
  }

  if (u.is_vertex() && uprime.is_vertex()) {
    blk.kind = Block::Kind::vertex_vertex;
    const Zeta zt = zeta(P, Z, u, uprime);
    blk.curve = reflect_polyline(portion_polyline(P, zt.portion),
                                 midpoint(P.vertex(i), P.vertex(j)));
    return blk;
  }

  const Zeta zt = zeta(P, Z, u, uprime);
  const auto seg = mid_region(P, u, uprime).corners;  // 2 endpoints
  const std::vector<Vec2> poly = portion_polyline(P, zt.portion);
  if (u.is_vertex()) {
    // block(v_i, e_j): sides scaled about Z_{i-1}^j and Z_i^j, reflections
    // about M(v_i, v_j) and M(v_i, v_{j+1}); pieces parallel to e_j.
    blk.kind = Block::Kind::vertex_edge;
    const Vec2 zlo = Z.at(P.mod(i - 1), j).point, zhi = Z.at(i, j).point;
    blk.side_lo = {scale(seg[0], 2.0, zlo), scale(seg[1], 2.0, zlo)};
    blk.side_hi = {scale(seg[0], 2.0, zhi), scale(seg[1], 2.0, zhi)};
    blk.reflected_a = reflect_polyline(poly, midpoint(P.vertex(i), P.vertex(j)));
    blk.reflected_b = reflect_polyline(poly, midpoint(P.vertex(i), P.vertex(j + 1)));
    blk.ref_edge = j;
    const double dv = P.line_dist(P.vertex(i), j);
    blk.band_lo = dv - P.line_dist(zlo, j);
    blk.band_hi = dv - P.line_dist(zhi, j);
  } else {
    // block(e_i, v_j): symmetric, pieces parallel to e_i.
    blk.kind = Block::Kind::edge_vertex;
    const Vec2 zlo = Z.at(i, P.mod(j - 1)).point, zhi = Z.at(i, j).point;
    blk.side_lo = {scale(seg[0], 2.0, zlo), scale(seg[1], 2.0, zlo)};
    blk.side_hi = {scale(seg[0], 2.0, zhi), scale(seg[1], 2.0, zhi)};
    blk.reflected_a = reflect_polyline(poly, midpoint(P.vertex(i), P.vertex(j)));
    blk.reflected_b = reflect_polyline(poly, midpoint(P.vertex(i + 1), P.vertex(j)));
    blk.ref_edge = i;
    const double dv = P.line_dist(P.vertex(j), i);
    blk.band_lo = dv - P.line_dist(zlo, i);
    blk.band_hi = dv - P.line_dist(zhi, i);
  }
  if (blk.band_lo > blk.band_hi) std::swap(blk.band_lo, blk.band_hi);
  return blk;
}

std::vector<Unit> h_set(const Polygon& P, int k) {
  k = P.mod(k);
  const int lo = P.farthest_vertex(P.mod(k - 1));  // D_{k-1}
  const int hi = P.farthest_vertex(k);             // D_k
  std::vector<Unit> out;
  if (lo == hi) return out;  // empty open portion
  // Walk (v_lo |> v_hi): open edges starting at lo, vertices strictly inside.
  for (int q = lo; q != hi; q = P.mod(q + 1)) {
    out.push_back(Unit::edge(q));
    if (P.mod(q + 1) != hi) out.push_back(Unit::vertex(P.mod(q + 1)));
  }
  return out;
}

std::vector<std::pair<Unit, Unit>> s_set(const Polygon& P) {
  std::vector<std::pair<Unit, Unit>> out;
  for (int k = 0; k < P.size(); ++k) {
    const Unit v = Unit::vertex(k);
    for (const Unit& u : h_set(P, k)) {
      out.emplace_back(v, u);
      out.emplace_back(u, v);
    }
  }
  return out;
}

}  // namespace lmap
