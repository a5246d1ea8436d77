// Parallelogram value type and the opposite-corners-on-two-lines
// construction, with the area identity relating area to distance-products.
#pragma once

#include <array>
#include <utility>

#include "lmap/geo.hpp"

namespace lmap {

struct Pgram {
  std::array<Vec2, 4> c;  // corners in clockwise order

  double area() const { return std::abs(cross(c[2] - c[0], c[3] - c[1])) / 2.0; }
  Vec2 center() const { return midpoint(c[0], c[2]); }
  // Deviation from the bisecting-diagonals invariant.
  double bisection_defect() const { return norm((c[0] + c[2]) - (c[1] + c[3])); }
  double signed_area2() const {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += cross(c[k], c[(k + 1) % 4]);
    return s;
  }
};

// Orders the corners clockwise (negative signed area, y-up), keeping c0 first.
Pgram make_pgram(Vec2 a0, Vec2 a1, Vec2 a2, Vec2 a3);

// The unique (Y, Y') with Y on l, Y' on l', midpoint(Y, Y') = M:
// Y = l intersect r_M(l'), Y' = l' intersect r_M(l).
std::pair<Vec2, Vec2> midpoint_pair_on_lines(const Line& l, const Line& lp, Vec2 M,
                                             double parallel_tol = 1e-12);

// The unique parallelogram X Y X' Y' with opposite corners at X, X' and the
// other two on l, l'. X, X' must lie in the same closed quadrant of (l, l').
// quad_tol < 0 picks a scale-aware default.
Pgram pgram_from_opposite(Vec2 X, Vec2 Xp, const Line& l, const Line& lp,
                          double quad_tol = -1.0);

// (area of the constructed parallelogram, |disprod(X)-disprod(X')| / sin th).
std::pair<double, double> area_identity_check(Vec2 X, Vec2 Xp, const Line& l, const Line& lp,
                                              double quad_tol = -1.0);

enum class SideClass { x_inside, xprime_inside, degenerate };

// Which of X, X' falls inside the closed triangle O Y Y'; decided by
// comparing distance-products.
SideClass triangle_side_classification(Vec2 X, Vec2 Xp, const Line& l, const Line& lp,
                                       double quad_tol = -1.0);

}  // namespace lmap
