#include "lmap/disprod.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lmap {

const BoundaryPoint& ZTable::at(int i, int j) const {
  if (!contains(i, j))
    throw NotChasing("no Z-point stored for pair (" + std::to_string(i) + "," +
                     std::to_string(j) + ")");
  return pts_[idx(i, j)];
}

namespace {

// disprod restricted to edge m is a quadratic in the edge parameter,
// q(t) = (p1 + r1 t)(p2 + r2 t), both factors affine and nonnegative on P.
struct EdgeQuadratic {
  double p1, r1, p2, r2;

  static EdgeQuadratic on_edge(const Polygon& P, int m, int i, int j) {
    const Vec2 a = P.vertex(m), b = P.vertex(m + 1);
    const double d1a = P.line_dist(a, i), d1b = P.line_dist(b, i);
    const double d2a = P.line_dist(a, j), d2b = P.line_dist(b, j);
    return {d1a, d1b - d1a, d2a, d2b - d2a};
  }
  double value(double t) const { return (p1 + r1 * t) * (p2 + r2 * t); }
  double deriv(double t) const { return r1 * (p2 + r2 * t) + r2 * (p1 + r1 * t); }
};

// Does some interior point of the edge dominate the endpoint at t0 (0 or 1)?
bool edge_dominates_endpoint(const EdgeQuadratic& q, int t0, double tol_rel) {
  const double q0 = q.value(0.0), q1 = q.value(1.0);
  const double tol = tol_rel * std::max({q0, q1, 1e-300});
  if (t0 == 0) return q.deriv(0.0) > tol || q1 - q0 > tol;
  return q.deriv(1.0) < -tol || q0 - q1 > tol;
}

BoundaryPoint z_on_edge(const Polygon& P, int i, int j, int m) {
  const Vec2 zi = line_intersection(P.edge_line(i), P.edge_line(m), P.parallel_tol());
  const Vec2 zj = line_intersection(P.edge_line(j), P.edge_line(m), P.parallel_tol());
  const Vec2 z = midpoint(zi, zj);
  const double t = dot(z - P.vertex(m), P.edge_dir(m)) / (P.edge_len(m) * P.edge_len(m));
  return P.on_edge(m, std::clamp(t, 0.0, 1.0));
}

// Shared walk state for z_batch: the portion-start tracker and the vertex
// cursor advance monotonically on a common unrolled timeline, so a sorted
// batch costs one trip around the boundary.
struct ZWalker {
  const Polygon& P;
  long start = -1;   // unrolled index of the current portion's first interior vertex
  long cursor = -1;  // unrolled index of the next vertex to classify

  explicit ZWalker(const Polygon& P_) : P(P_) {}

  BoundaryPoint run(int a, int b) {
    const int n = P.size();
    const int f = P.mod(b + 2);                // first interior vertex of (v_{b+1} |> v_a)
    const long m = ((long(a) - b - 2) % n + n) % n;  // interior vertex count
    if (start < 0) {
      start = f;
      cursor = start;
    } else {
      start += ((long(f) - start) % n + n) % n;
      cursor = std::max(cursor, start);
    }
    const long last = start + m - 1;
    while (cursor <= last) {
      const int k = int(cursor % n);
      switch (classify_vertex_vs_z(P, a, b, k)) {
        case VertexVsZ::after_vertex:
          ++cursor;
          continue;
        case VertexVsZ::at_vertex:
          return P.at_vertex(k);
        case VertexVsZ::before_vertex:
          return z_on_edge(P, a, b, P.mod(k - 1));
      }
    }
    return z_on_edge(P, a, b, P.mod(a - 1));
  }
};

}  // namespace

VertexVsZ classify_vertex_vs_z(const Polygon& P, int i, int j, int k) {
  i = P.mod(i);
  j = P.mod(j);
  k = P.mod(k);
  if (!edge_chasing(P, i, j)) throw NotChasing("classify_vertex_vs_z: e_i must chase e_j");
  const int n = P.size();
  const long m = ((long(i) - j - 2) % n + n) % n;
  const long off = ((long(k) - (j + 2)) % n + n) % n;
  if (off >= m)
    throw VertexOutOfRange("vertex " + std::to_string(k) + " not interior to the portion");

  const double tol = P.dominance_tol();
  const bool before =
      edge_dominates_endpoint(EdgeQuadratic::on_edge(P, P.mod(k - 1), i, j), 1, tol);
  const bool after = edge_dominates_endpoint(EdgeQuadratic::on_edge(P, k, i, j), 0, tol);
  if (before) return VertexVsZ::before_vertex;
  if (after) return VertexVsZ::after_vertex;
  return VertexVsZ::at_vertex;
}

BoundaryPoint z_point(const Polygon& P, int i, int j) {
  if (P.mod(i) == P.mod(j)) throw SameEdge("z_point needs two distinct edges");
  if (!edge_chasing(P, i, j)) throw NotChasing("z_point: e_i must chase e_j");
  ZWalker w(P);
  return w.run(P.mod(i), P.mod(j));
}

ZTable z_batch(const Polygon& P, const std::vector<std::pair<int, int>>& pairs) {
  const int n = P.size();
  ZTable table(n);
  long adv_a = 0, adv_b = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const int a = P.mod(pairs[k].first), b = P.mod(pairs[k].second);
    if (!edge_chasing(P, a, b))
      throw NotChasing("z_batch: pair " + std::to_string(k) + " is not chasing");
    if (k > 0) {
      adv_a += ((a - pairs[k - 1].first) % n + n) % n;
      adv_b += ((b - pairs[k - 1].second) % n + n) % n;
      if (adv_a >= n || adv_b >= n)
        throw NotSorted("z_batch: pair sequences must be sorted clockwise");
    }
  }
  ZWalker w(P);
  for (const auto& [a, b] : pairs) table.put(P.mod(a), P.mod(b), w.run(P.mod(a), P.mod(b)));
  return table;
}

ZTable ZTable::build_full(const Polygon& P) {
  const int n = P.size();
  ZTable table(n);
  for (int i = 0; i < n; ++i) {
    // e_i chases exactly e_{i+1},...,e_{k-1} where v_k = D_i.
    const int k = P.farthest_vertex(i);
    std::vector<std::pair<int, int>> pairs;
    for (int j = P.mod(i + 1); j != k; j = P.mod(j + 1)) pairs.emplace_back(i, j);
    ZWalker w(P);
    for (const auto& [a, b] : pairs) table.put(a, b, w.run(a, b));
  }
  return table;
}

bool check_unimodal(const Polygon& P, int i, int j, int samples) {
  i = P.mod(i);
  j = P.mod(j);
  if (!edge_chasing(P, i, j)) throw NotChasing("check_unimodal: e_i must chase e_j");
  if (samples < 3) return false;

  const double s0 = P.arc_of_vertex(j + 1);
  double span = P.arc_of_vertex(i) - s0;
  if (span <= 0) span += P.perimeter();
  std::vector<double> vals(samples);
  for (int q = 0; q < samples; ++q) {
    const Vec2 X = P.point_at_arc(s0 + span * q / (samples - 1)).point;
    vals[q] = disprod_edges(P, X, i, j);
  }
  const int peak = int(std::max_element(vals.begin(), vals.end()) - vals.begin());
  const double tol = 1e-12 * *std::max_element(vals.begin(), vals.end());
  for (int q = 0; q + 1 < samples; ++q) {
    if (q < peak && vals[q + 1] <= vals[q] - tol) return false;
    if (q >= peak && vals[q + 1] >= vals[q] + tol) return false;
  }
  // Peak within one sample of the computed Z-point.
  const double zs = P.arc_of(z_point(P, i, j));
  double zrel = std::fmod(zs - s0, P.perimeter());
  if (zrel < 0) zrel += P.perimeter();
  const double h = span / (samples - 1);
  return std::abs(zrel - peak * h) <= 1.5 * h;
}

}  // namespace lmap
