// Strictly convex clockwise polygon with pairwise-nonparallel edges, the unit
// taxonomy (vertices and open edges), boundary addressing, and the chasing
// relations between edges and units.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lmap/geo.hpp"

namespace lmap {

struct BuildOptions {
  double tol_scale = 1.0;   // multiplies every tolerance
  bool perturb = false;     // rotate vertices by tiny random angles on ParallelEdges
  double perturb_eps = 1e-7;  // radians
  std::uint64_t seed = 0;
  int perturb_attempts = 8;
};

// A unit is a vertex or an open edge. Edge i runs from vertex i to vertex i+1.
struct Unit {
  enum class Kind : std::uint8_t { vertex, edge };
  Kind kind = Kind::vertex;
  int index = 0;

  static Unit vertex(int i) { return {Kind::vertex, i}; }
  static Unit edge(int i) { return {Kind::edge, i}; }
  bool is_vertex() const { return kind == Kind::vertex; }
  bool is_edge() const { return kind == Kind::edge; }
  bool operator==(const Unit&) const = default;
};

// A point addressed on the boundary. For an edge unit, t in (0,1) is the
// position along the open edge; canonical form collapses near-endpoint t to
// the adjacent vertex.
struct BoundaryPoint {
  Unit unit;
  double t = 0.0;
  Vec2 point;
};

// A directed clockwise arc of the boundary with inclusivity flags. A portion
// with start == end and both ends included denotes the single point.
struct BoundaryPortion {
  BoundaryPoint start;
  BoundaryPoint end;
  bool include_start = true;
  bool include_end = true;
};

enum class UnitRelation { u_chases_uprime, uprime_chases_u, neither };

class Polygon {
 public:
  // Validates and normalizes the input ring: accepts either orientation,
  // stores clockwise (y-up), merges straight collinear vertices, rejects
  // non-convex and parallel-edge inputs (the latter optionally perturbed).
  static Polygon build(std::vector<Vec2> points, const BuildOptions& opts = {});

  int size() const { return n_; }
  const std::vector<Vec2>& vertices() const { return v_; }
  Vec2 vertex(int i) const { return v_[mod(i)]; }
  Vec2 edge_dir(int i) const { return dir_[mod(i)]; }
  double edge_len(int i) const { return len_[mod(i)]; }
  Line edge_line(int i) const { return {v_[mod(i)], dir_[mod(i)]}; }
  int mod(int i) const { return ((i % n_) + n_) % n_; }

  double perimeter() const { return perimeter_; }
  double diameter() const { return diameter_; }
  Vec2 centroid() const { return centroid_; }
  double signed_area() const { return signed_area_; }
  double area() const { return std::abs(signed_area_); }

  // D_i: the unique vertex farthest from the extended line of edge i.
  int farthest_vertex(int edge) const { return far_[mod(edge)]; }

  // Distance of X to the extended line of edge i; equals the unsigned
  // distance for every X inside P (the polygon lies on one side).
  double line_dist(Vec2 X, int edge) const {
    const int i = mod(edge);
    return cross(X - v_[i], dir_[i]) / len_[i];
  }

  bool contains(Vec2 X, double tol) const;

  // Nearest boundary feature by angular lookup from the centroid; exact for
  // points near the boundary, which is the only place flags depend on it.
  struct Location {
    Unit unit;
    double t = 0.0;     // edge parameter when unit is an edge
    double dist = 0.0;  // unsigned distance to the boundary
    bool inside = false;
    Vec2 closest;
  };
  Location locate(Vec2 X) const;

  // Boundary addressing.
  BoundaryPoint at_vertex(int i) const { return {Unit::vertex(mod(i)), 0.0, v_[mod(i)]}; }
  BoundaryPoint on_edge(int i, double t) const;  // canonicalizes endpoints
  BoundaryPoint canonical(BoundaryPoint bp) const;
  BoundaryPoint point_at_arc(double s) const;  // s taken modulo perimeter
  double arc_of(const BoundaryPoint& bp) const;
  double arc_of_vertex(int i) const { return cum_[mod(i)]; }

  // Tolerances (scaled by BuildOptions::tol_scale).
  double tol_scale() const { return tol_scale_; }
  double parallel_tol() const { return 1e-12 * tol_scale_; }
  double canon_tol() const { return 1e-12 * tol_scale_; }
  double collinear_tol() const { return 1e-12 * tol_scale_ * diameter_ * diameter_; }
  double on_boundary_tol() const { return 1e-9 * tol_scale_ * diameter_; }
  double quad_tol() const { return 1e-9 * tol_scale_ * diameter_; }
  double containment_tol() const { return 1e-9 * tol_scale_ * diameter_; }
  double degenerate_tol() const { return 1e-12 * tol_scale_ * diameter_ * diameter_; }
  double dominance_tol() const { return 1e-12 * tol_scale_; }

 private:
  Polygon() = default;
  void finalize();  // caches after v_ is fixed

  int n_ = 0;
  std::vector<Vec2> v_;
  std::vector<Vec2> dir_;
  std::vector<double> len_;
  std::vector<double> cum_;  // cum_[i] = arc length from v_0 to v_i
  std::vector<int> far_;     // far_[i] = index of D_i
  std::vector<double> angle_unwrapped_;  // decreasing vertex angles for locate()
  double perimeter_ = 0.0;
  double diameter_ = 0.0;
  double signed_area_ = 0.0;
  Vec2 centroid_;
  double angle0_ = 0.0;
  double tol_scale_ = 1.0;
};

// e_i is chasing e_j iff the intersection of their extended lines lies in the
// clockwise boundary span from e_i to e_j. Exactly one direction holds for
// any distinct pair (pairwise-nonparallel edges).
bool edge_chasing(const Polygon& P, int i, int j);

// Backward and forward edge of a unit: vertex i -> (e_{i-1}, e_i),
// edge i -> (e_i, e_i).
std::pair<int, int> back_forw(const Polygon& P, Unit u);
std::pair<int, int> back_forw(const Polygon& P, const BoundaryPoint& X);

UnitRelation unit_chasing(const Polygon& P, Unit u, Unit uprime);

// Clockwise membership / ordering within a portion, honoring inclusivity.
bool portion_contains(const Polygon& P, const BoundaryPortion& rho, const BoundaryPoint& X,
                      double arc_tol = -1.0);
// -1, 0, +1 for A before / equal / after B along rho; throws NotInPortion.
int portion_order(const Polygon& P, const BoundaryPortion& rho, const BoundaryPoint& A,
                  const BoundaryPoint& B, double arc_tol = -1.0);

// The clockwise polyline start -> (intervening vertices) -> end of a portion.
std::vector<Vec2> portion_polyline(const Polygon& P, const BoundaryPortion& rho);

// Mirror image across the x axis, re-indexed so that mirrored vertex q is
// P.vertex(-q); used to run clockwise sweeps "from the other side".
Polygon mirrored(const Polygon& P);

}  // namespace lmap
