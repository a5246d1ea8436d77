// Distance-product function, Z-points (its unique boundary maximizers per
// chasing edge pair), and the batch computation that walks the boundary once.
#pragma once

#include <utility>
#include <vector>

#include "lmap/polygon.hpp"

namespace lmap {

// Product of the unsigned distances from X to the two lines.
inline double disprod(Vec2 X, const Line& l, const Line& lp) {
  return dist_to_line(X, l) * dist_to_line(X, lp);
}

inline double disprod_edges(const Polygon& P, Vec2 X, int i, int j) {
  return P.line_dist(X, i) * P.line_dist(X, j);
}

// Cached Z-points keyed by chasing edge pair.
class ZTable {
 public:
  explicit ZTable(int n) : n_(n), pts_(std::size_t(n) * n), has_(std::size_t(n) * n, 0) {}

  bool contains(int i, int j) const { return has_[idx(i, j)] != 0; }
  const BoundaryPoint& at(int i, int j) const;  // throws NotChasing if absent
  void put(int i, int j, const BoundaryPoint& z) {
    pts_[idx(i, j)] = z;
    has_[idx(i, j)] = 1;
  }
  int size() const { return n_; }

  // Z-points of every chasing pair, O(n^2) total via per-edge batch walks.
  static ZTable build_full(const Polygon& P);

 private:
  std::size_t idx(int i, int j) const {
    return std::size_t(((i % n_) + n_) % n_) * n_ + std::size_t(((j % n_) + n_) % n_);
  }
  int n_;
  std::vector<BoundaryPoint> pts_;
  std::vector<char> has_;
};

enum class VertexVsZ { at_vertex, before_vertex, after_vertex };

// Where Z_i^j falls relative to vertex k, decided by the two O(1) dominance
// queries on the per-edge quadratics. Requires e_i < e_j and v_k strictly
// inside (v_{j+1} |> v_i).
VertexVsZ classify_vertex_vs_z(const Polygon& P, int i, int j, int k);

// The unique maximizer of disprod(., l_i, l_j) over P; requires e_i < e_j.
BoundaryPoint z_point(const Polygon& P, int i, int j);

// Z-points for pairs (a_1,b_1),...,(a_m,b_m) with a_k < b_k, both coordinate
// sequences sorted clockwise; single boundary walk, O(m+n).
ZTable z_batch(const Polygon& P, const std::vector<std::pair<int, int>>& pairs);

// Test utility: samples disprod along [v_{j+1} |> v_i] and checks the
// rise-then-fall shape with the peak within one sample of Z_i^j.
bool check_unimodal(const Polygon& P, int i, int j, int samples);

}  // namespace lmap
