// Elementary planar geometry: vectors, lines, reflection, scaling.
#pragma once

#include <cmath>

#include "lmap/errors.hpp"

namespace lmap {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
  Vec2 operator/(double k) const { return {x / k, y / k}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double k, Vec2 v) { return v * k; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 midpoint(Vec2 a, Vec2 b) { return {(a.x + b.x) / 2, (a.y + b.y) / 2}; }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

// A line through `point` with direction `dir` (nonzero, not necessarily unit).
struct Line {
  Vec2 point;
  Vec2 dir;
};

inline double dist_to_line(Vec2 X, const Line& l) {
  return std::abs(cross(l.dir, X - l.point)) / norm(l.dir);
}

// Signed distance: positive on the clockwise side of the directed line.
inline double signed_dist(Vec2 X, const Line& l) {
  return cross(X - l.point, l.dir) / norm(l.dir);
}

inline Vec2 line_intersection(const Line& l, const Line& lp, double parallel_tol = 1e-12) {
  const double den = cross(l.dir, lp.dir);
  if (std::abs(den) <= parallel_tol * norm(l.dir) * norm(lp.dir))
    throw ParallelLines("line_intersection: directions are parallel");
  const double t = cross(lp.point - l.point, lp.dir) / den;
  return l.point + t * l.dir;
}

// Central reflection about O.
inline Vec2 reflect(Vec2 X, Vec2 O) { return 2.0 * O - X; }
inline Line reflect(const Line& l, Vec2 O) { return {reflect(l.point, O), -l.dir}; }

// k-scaling about O: X -> O + k (X - O).
inline Vec2 scale(Vec2 X, double k, Vec2 O) {
  if (k == 0.0) throw ZeroFactor("scale: zero factor");
  return O + k * (X - O);
}

inline double dist_point_segment(Vec2 X, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = norm2(d);
  if (len2 == 0.0) return dist(X, a);
  double t = dot(X - a, d) / len2;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return dist(X, a + t * d);
}

inline double triangle_area(Vec2 a, Vec2 b, Vec2 c) {
  return std::abs(cross(b - a, c - a)) / 2.0;
}

}  // namespace lmap
