#include "lmap/pgram.hpp"

#include <algorithm>
#include <cmath>

#include "lmap/disprod.hpp"

namespace lmap {

Pgram make_pgram(Vec2 a0, Vec2 a1, Vec2 a2, Vec2 a3) {
  Pgram q{{a0, a1, a2, a3}};
  if (q.signed_area2() > 0.0) std::swap(q.c[1], q.c[3]);
  return q;
}

std::pair<Vec2, Vec2> midpoint_pair_on_lines(const Line& l, const Line& lp, Vec2 M,
                                             double parallel_tol) {
  const Vec2 Y = line_intersection(l, reflect(lp, M), parallel_tol);
  const Vec2 Yp = line_intersection(lp, reflect(l, M), parallel_tol);
  return {Y, Yp};
}

namespace {

void check_same_quadrant(Vec2 X, Vec2 Xp, const Line& l, const Line& lp, double quad_tol) {
  if (quad_tol < 0)
    quad_tol = 1e-9 * std::max({1.0, dist(X, l.point), dist(Xp, l.point), dist(X, lp.point)});
  const double slx = signed_dist(X, l), slxp = signed_dist(Xp, l);
  const double spx = signed_dist(X, lp), spxp = signed_dist(Xp, lp);
  const bool split_l = (slx > quad_tol && slxp < -quad_tol) || (slx < -quad_tol && slxp > quad_tol);
  const bool split_lp =
      (spx > quad_tol && spxp < -quad_tol) || (spx < -quad_tol && spxp > quad_tol);
  if (split_l || split_lp)
    throw QuadrantMismatch("points lie in different quadrants of the two lines");
}

}  // namespace

Pgram pgram_from_opposite(Vec2 X, Vec2 Xp, const Line& l, const Line& lp, double quad_tol) {
  check_same_quadrant(X, Xp, l, lp, quad_tol);
  const auto [Y, Yp] = midpoint_pair_on_lines(l, lp, midpoint(X, Xp));
  return make_pgram(X, Y, Xp, Yp);
}

std::pair<double, double> area_identity_check(Vec2 X, Vec2 Xp, const Line& l, const Line& lp,
                                              double quad_tol) {
  const Pgram q = pgram_from_opposite(X, Xp, l, lp, quad_tol);
  const double sin_theta =
      std::abs(cross(l.dir, lp.dir)) / (norm(l.dir) * norm(lp.dir));
  const double rhs = std::abs(disprod(X, l, lp) - disprod(Xp, l, lp)) / sin_theta;
  return {q.area(), rhs};
}

SideClass triangle_side_classification(Vec2 X, Vec2 Xp, const Line& l, const Line& lp,
                                       double quad_tol) {
  check_same_quadrant(X, Xp, l, lp, quad_tol);
  const double dx = disprod(X, l, lp), dxp = disprod(Xp, l, lp);
  const double tol = 1e-12 * std::max({dx, dxp, 1e-300});
  if (std::abs(dx - dxp) <= tol) return SideClass::degenerate;
  return dx < dxp ? SideClass::x_inside : SideClass::xprime_inside;
}

}  // namespace lmap
