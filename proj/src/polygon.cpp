#include "lmap/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace lmap {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double bbox_diag(const std::vector<Vec2>& pts) {
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Vec2& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

double shoelace(const std::vector<Vec2>& pts) {
  double s = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) s += cross(pts[k], pts[(k + 1) % pts.size()]);
  return s / 2.0;
}

// Normalizes one candidate ring in place. Throws on invalid geometry.
void normalize_ring(std::vector<Vec2>& pts, double tol_scale) {
  if (pts.size() < 3) throw TooFewVertices("polygon needs at least 3 vertices");
  const double diag = bbox_diag(pts);
  if (diag == 0.0) throw NotConvex("all vertices coincide");

  // Drop consecutive duplicates.
  {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (const Vec2& p : pts)
      if (out.empty() || dist(out.back(), p) > 1e-12 * tol_scale * diag) out.push_back(p);
    while (out.size() > 1 && dist(out.front(), out.back()) <= 1e-12 * tol_scale * diag)
      out.pop_back();
    pts = std::move(out);
  }
  if (pts.size() < 3) throw TooFewVertices("fewer than 3 distinct vertices");

  const double sa = shoelace(pts);
  const double area_tol = 1e-12 * tol_scale * diag * diag;
  if (std::abs(sa) <= area_tol) throw NotConvex("degenerate (zero-area) polygon");
  if (sa > 0.0) std::reverse(pts.begin(), pts.end());  // store clockwise (y-up)

  // Merge collinear straight-ahead vertices; reject backtracks and ccw turns.
  const double col_tol = 1e-12 * tol_scale * diag * diag;
  bool merged = true;
  while (merged) {
    merged = false;
    const int m = static_cast<int>(pts.size());
    if (m < 3) throw NotConvex("polygon collapsed while merging collinear vertices");
    for (int k = 0; k < m; ++k) {
      const Vec2 a = pts[k] - pts[(k + m - 1) % m];
      const Vec2 b = pts[(k + 1) % m] - pts[k];
      const double c = cross(a, b);
      if (std::abs(c) <= col_tol) {
        if (dot(a, b) <= 0.0)
          throw NotConvex("backtracking turn at vertex " + std::to_string(k));
        pts.erase(pts.begin() + k);
        merged = true;
        break;
      }
      if (c > 0.0) throw NotConvex("counterclockwise turn at vertex " + std::to_string(k));
    }
  }
  if (pts.size() < 3) throw NotConvex("polygon collapsed while merging collinear vertices");

  // Pairwise-nonparallel edges.
  const int m = static_cast<int>(pts.size());
  std::vector<Vec2> unit_dirs(m);
  for (int k = 0; k < m; ++k) {
    Vec2 d = pts[(k + 1) % m] - pts[k];
    unit_dirs[k] = d / norm(d);
  }
  const double par_tol = 1e-12 * tol_scale;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(cross(unit_dirs[i], unit_dirs[j])) < par_tol)
        throw ParallelEdges("edges " + std::to_string(i) + " and " + std::to_string(j) +
                            " are parallel");
}

}  // namespace

Polygon Polygon::build(std::vector<Vec2> points, const BuildOptions& opts) {
  const std::vector<Vec2> pristine = points;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> angle(-opts.perturb_eps, opts.perturb_eps);

  int attempt = 0;
  for (;;) {
    std::vector<Vec2> ring = pristine;
    if (attempt > 0) {
      Vec2 c{0, 0};
      for (const Vec2& p : ring) c = c + p;
      c = c / static_cast<double>(ring.size());
      for (Vec2& p : ring) {
        const double a = angle(rng);
        const double ca = std::cos(a), sa = std::sin(a);
        const Vec2 r = p - c;
        p = c + Vec2{ca * r.x - sa * r.y, sa * r.x + ca * r.y};
      }
    }
    try {
      normalize_ring(ring, opts.tol_scale);
      Polygon P;
      P.v_ = std::move(ring);
      P.n_ = static_cast<int>(P.v_.size());
      P.tol_scale_ = opts.tol_scale;
      P.finalize();
      return P;
    } catch (const ParallelEdges&) {
      if (!opts.perturb || attempt >= opts.perturb_attempts) throw;
    } catch (const NotConvex&) {
      if (!opts.perturb || attempt >= opts.perturb_attempts) throw;
    }
    ++attempt;
  }
}

void Polygon::finalize() {
  dir_.resize(n_);
  len_.resize(n_);
  cum_.resize(n_);
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) {
    cum_[i] = acc;
    dir_[i] = v_[(i + 1) % n_] - v_[i];
    len_[i] = norm(dir_[i]);
    acc += len_[i];
  }
  perimeter_ = acc;
  signed_area_ = shoelace(v_);

  diameter_ = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) diameter_ = std::max(diameter_, dist(v_[i], v_[j]));

  // Area centroid (strictly interior for a convex polygon).
  {
    Vec2 c{0, 0};
    double a6 = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double w = cross(v_[i], v_[(i + 1) % n_]);
      c = c + (v_[i] + v_[(i + 1) % n_]) * w;
      a6 += w;
    }
    centroid_ = c / (3.0 * a6);
  }

  far_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    int best = 0;
    double bd = -1.0;
    for (int m = 0; m < n_; ++m) {
      const double d = line_dist(v_[m], i);
      if (d > bd) {
        bd = d;
        best = m;
      }
    }
    far_[i] = best;
  }

  // Unwrapped (decreasing) vertex angles about the centroid for locate().
  angle_unwrapped_.resize(n_ + 1);
  angle0_ = std::atan2(v_[0].y - centroid_.y, v_[0].x - centroid_.x);
  double prev = angle0_;
  angle_unwrapped_[0] = 0.0;
  for (int m = 1; m < n_; ++m) {
    const double th = std::atan2(v_[m].y - centroid_.y, v_[m].x - centroid_.x);
    double drop = std::fmod(prev - th, kTwoPi);
    if (drop < 0) drop += kTwoPi;
    angle_unwrapped_[m] = angle_unwrapped_[m - 1] + drop;
    prev = th;
  }
  angle_unwrapped_[n_] = kTwoPi;
}

bool Polygon::contains(Vec2 X, double tol) const {
  for (int i = 0; i < n_; ++i)
    if (line_dist(X, i) < -tol) return false;
  return true;
}

Polygon::Location Polygon::locate(Vec2 X) const {
  const Vec2 r = X - centroid_;
  int wedge;
  if (norm(r) <= 1e-14 * diameter_) {
    wedge = 0;  // centroid itself; any wedge works for the flags we report
  } else {
    const double th = std::atan2(r.y, r.x);
    double drop = std::fmod(angle0_ - th, kTwoPi);
    if (drop < 0) drop += kTwoPi;
    // wedge m: angle_unwrapped_[m] <= drop < angle_unwrapped_[m+1]
    const auto it = std::upper_bound(angle_unwrapped_.begin(), angle_unwrapped_.end(), drop);
    wedge = static_cast<int>(it - angle_unwrapped_.begin()) - 1;
    wedge = std::clamp(wedge, 0, n_ - 1);
  }

  Location loc;
  double best = std::numeric_limits<double>::infinity();
  int best_edge = wedge;
  double best_t = 0.0;
  double inside_margin = std::numeric_limits<double>::infinity();
  for (int off = -1; off <= 1; ++off) {
    const int e = mod(wedge + off);
    inside_margin = std::min(inside_margin, line_dist(X, e));
    double t = dot(X - v_[e], dir_[e]) / (len_[e] * len_[e]);
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 c = v_[e] + t * dir_[e];
    const double d = dist(X, c);
    if (d < best) {
      best = d;
      best_edge = e;
      best_t = t;
      loc.closest = c;
    }
  }
  loc.dist = best;
  loc.inside = inside_margin >= 0.0;
  // Snap to a vertex when the closest point is within tolerance of one.
  const double snap = on_boundary_tol();
  if (dist(loc.closest, v_[best_edge]) <= snap) {
    loc.unit = Unit::vertex(best_edge);
    loc.t = 0.0;
    loc.closest = v_[best_edge];
  } else if (dist(loc.closest, v_[mod(best_edge + 1)]) <= snap) {
    loc.unit = Unit::vertex(mod(best_edge + 1));
    loc.t = 0.0;
    loc.closest = v_[mod(best_edge + 1)];
  } else {
    loc.unit = Unit::edge(best_edge);
    loc.t = best_t;
  }
  return loc;
}

BoundaryPoint Polygon::on_edge(int i, double t) const {
  return canonical(BoundaryPoint{Unit::edge(mod(i)), t, {}});
}

BoundaryPoint Polygon::canonical(BoundaryPoint bp) const {
  bp.unit.index = mod(bp.unit.index);
  if (bp.unit.is_edge()) {
    if (bp.t <= canon_tol()) return at_vertex(bp.unit.index);
    if (bp.t >= 1.0 - canon_tol()) return at_vertex(bp.unit.index + 1);
    bp.point = v_[bp.unit.index] + bp.t * dir_[bp.unit.index];
  } else {
    bp.t = 0.0;
    bp.point = v_[bp.unit.index];
  }
  return bp;
}

BoundaryPoint Polygon::point_at_arc(double s) const {
  s = std::fmod(s, perimeter_);
  if (s < 0) s += perimeter_;
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  const int e = static_cast<int>(it - cum_.begin()) - 1;
  return on_edge(e, (s - cum_[e]) / len_[e]);
}

double Polygon::arc_of(const BoundaryPoint& bp) const {
  const int i = mod(bp.unit.index);
  return bp.unit.is_vertex() ? cum_[i] : cum_[i] + bp.t * len_[i];
}

bool edge_chasing(const Polygon& P, int i, int j) {
  i = P.mod(i);
  j = P.mod(j);
  if (i == j) throw SameEdge("edge_chasing needs two distinct edges");
  // With t_i, t_j the intersection parameters along e_i, e_j, exactly one of
  // (t_i >= 1, t_j <= 0) and (t_j >= 1, t_i <= 0) holds, so e_i < e_j
  // reduces to t_i > t_j.
  const Vec2 w = P.vertex(j) - P.vertex(i);
  const Vec2 di = P.edge_dir(i), dj = P.edge_dir(j);
  const double num = cross(w, dj) - cross(w, di);  // (t_i - t_j) * cross(di, dj)
  const double den = cross(di, dj);
  if (num == 0.0) return i < j;  // deterministic tie break; unreachable for valid input
  return (num > 0.0) == (den > 0.0);
}

std::pair<int, int> back_forw(const Polygon& P, Unit u) {
  const int i = P.mod(u.index);
  if (u.is_vertex()) return {P.mod(i - 1), i};
  return {i, i};
}

std::pair<int, int> back_forw(const Polygon& P, const BoundaryPoint& X) {
  return back_forw(P, X.unit);
}

UnitRelation unit_chasing(const Polygon& P, Unit u, Unit uprime) {
  u.index = P.mod(u.index);
  uprime.index = P.mod(uprime.index);
  if (u == uprime) throw SameUnit("unit_chasing needs two distinct units");
  const auto [bu, fu] = back_forw(P, u);
  const auto [bp, fp] = back_forw(P, uprime);
  if (bu != bp && fu != fp) {
    if (edge_chasing(P, bu, bp) && edge_chasing(P, fu, fp))
      return UnitRelation::u_chases_uprime;
    if (edge_chasing(P, bp, bu) && edge_chasing(P, fp, fu))
      return UnitRelation::uprime_chases_u;
  }
  return UnitRelation::neither;
}

namespace {

// Arc position of X relative to the portion start, wrapped into [0, L) and
// snapped to 0 when within tol of a full loop.
double rel_arc(const Polygon& P, double s0, double s, double tol) {
  double r = std::fmod(s - s0, P.perimeter());
  if (r < 0) r += P.perimeter();
  if (r >= P.perimeter() - tol) r = 0.0;
  return r;
}

}  // namespace

bool portion_contains(const Polygon& P, const BoundaryPortion& rho, const BoundaryPoint& X,
                      double arc_tol) {
  const double tol = arc_tol < 0 ? P.on_boundary_tol() : arc_tol;
  const double s0 = P.arc_of(rho.start);
  const double r = rel_arc(P, s0, P.arc_of(X), tol);
  const double re = rel_arc(P, s0, P.arc_of(rho.end), tol);
  if (r > re + tol) return false;
  if (!rho.include_start && r <= tol) return false;
  if (!rho.include_end && r >= re - tol) return false;
  return true;
}

int portion_order(const Polygon& P, const BoundaryPortion& rho, const BoundaryPoint& A,
                  const BoundaryPoint& B, double arc_tol) {
  const double tol = arc_tol < 0 ? P.on_boundary_tol() : arc_tol;
  if (!portion_contains(P, rho, A, tol) || !portion_contains(P, rho, B, tol))
    throw NotInPortion("portion_order: point outside the portion");
  const double s0 = P.arc_of(rho.start);
  const double ra = rel_arc(P, s0, P.arc_of(A), tol);
  const double rb = rel_arc(P, s0, P.arc_of(B), tol);
  if (std::abs(ra - rb) <= tol) return 0;
  return ra < rb ? -1 : 1;
}

std::vector<Vec2> portion_polyline(const Polygon& P, const BoundaryPortion& rho) {
  const double tol = P.on_boundary_tol();
  const double s0 = P.arc_of(rho.start);
  const double re = rel_arc(P, s0, P.arc_of(rho.end), tol);
  std::vector<Vec2> pts{rho.start.point};
  int q = rho.start.unit.index + 1;  // first vertex candidate after the start
  for (int steps = 0; steps < P.size(); ++steps, ++q) {
    const double rq = rel_arc(P, s0, P.arc_of_vertex(q), tol);
    if (rq <= tol || rq >= re - tol) break;
    pts.push_back(P.vertex(q));
  }
  pts.push_back(rho.end.point);
  return pts;
}

Polygon mirrored(const Polygon& P) {
  const int n = P.size();
  std::vector<Vec2> pts(n);
  for (int q = 0; q < n; ++q) {
    const Vec2 v = P.vertex((n - q) % n);
    pts[q] = {v.x, -v.y};
  }
  BuildOptions opts;
  opts.tol_scale = P.tol_scale();
  return Polygon::build(std::move(pts), opts);
}

}  // namespace lmap
