#include "lmap/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

namespace lmap {

const char* to_string(Source s) {
  switch (s) {
    case Source::alg_narrow: return "alg_narrow";
    case Source::alg_broad: return "alg_broad";
    case Source::alg_even: return "alg_even";
    case Source::oracle: return "oracle";
  }
  return "?";
}

const char* to_string(ProbeResult p) {
  switch (p) {
    case ProbeResult::not_run: return "not_run";
    case ProbeResult::passed: return "passed";
    case ProbeResult::failed: return "failed";
  }
  return "?";
}

namespace {

// Distance profile of a boundary arc (vertices `first`..`last`, clockwise,
// inclusive) against the extended line of edge `ref`. The profile is strictly
// monotone on the arcs the algorithms use, so a distance value pins a unique
// boundary point.
class ArcProfile {
 public:
  ArcProfile(const Polygon& P, int ref, int first, int last) : P_(&P), ref_(P.mod(ref)) {
    for (int q = P.mod(first);; q = P.mod(q + 1)) {
      idx_.push_back(q);
      d_.push_back(P.line_dist(P.vertex(q), ref_));
      if (q == P.mod(last)) break;
    }
    decreasing_ = d_.front() > d_.back();
  }

  std::optional<BoundaryPoint> at(double delta) const {
    const double tol = P_->on_boundary_tol();
    const double top = decreasing_ ? d_.front() : d_.back();
    const double bot = decreasing_ ? d_.back() : d_.front();
    if (delta > top + tol || delta < bot - tol) return std::nullopt;
    delta = std::clamp(delta, bot, top);
    // Find the segment whose endpoint distances straddle delta.
    std::size_t lo = 0, hi = d_.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      const bool go_right = decreasing_ ? d_[mid] >= delta : d_[mid] <= delta;
      (go_right ? lo : hi) = mid;
    }
    return interpolate(lo, delta);
  }

  // Forward-only cursor variant for the sweeps whose query sequence is
  // monotone; falls back to the binary search if a query steps backwards.
  std::optional<BoundaryPoint> at_cursor(double delta) {
    const double tol = P_->on_boundary_tol();
    const auto behind = [&](std::size_t m) {
      return decreasing_ ? d_[m] < delta - tol : d_[m] > delta + tol;
    };
    if (cur_ < d_.size() && behind(cur_)) return at(delta);
    while (cur_ + 1 < d_.size() && !behind(cur_ + 1)) ++cur_;
    if (cur_ + 1 >= d_.size()) {
      // Query at or past the arc's far end.
      const double endd = d_.back();
      if (decreasing_ ? delta < endd - tol : delta > endd + tol) return std::nullopt;
      return P_->at_vertex(idx_.back());
    }
    if (decreasing_ ? delta > d_[cur_] + tol : delta < d_[cur_] - tol) return std::nullopt;
    return interpolate(cur_, std::clamp(delta, std::min(d_[cur_], d_[cur_ + 1]),
                                        std::max(d_[cur_], d_[cur_ + 1])));
  }

 private:
  std::optional<BoundaryPoint> interpolate(std::size_t m, double delta) const {
    const double den = d_[m] - d_[m + 1];
    double t = den == 0.0 ? 0.0 : (d_[m] - delta) / den;
    t = std::clamp(t, 0.0, 1.0);
    return P_->on_edge(idx_[m], t);
  }

  const Polygon* P_;
  int ref_;
  bool decreasing_ = true;
  std::vector<int> idx_;
  std::vector<double> d_;
  std::size_t cur_ = 0;
};

bool edge_param_ok(const Polygon& P, Vec2 X, int edge, double slack_mult = 8.0) {
  const int e = P.mod(edge);
  const double t = dot(X - P.vertex(e), P.edge_dir(e)) / (P.edge_len(e) * P.edge_len(e));
  const double beta = slack_mult * P.on_boundary_tol() / P.edge_len(e);
  return t >= -beta && t <= 1.0 + beta;
}

void emit(std::vector<Candidate>& out, const Polygon& P, Vec2 a0, Vec2 a1, Vec2 a2, Vec2 a3,
          Source src, Unit u, Unit up, int anchor, SearchCounts& counts) {
  Pgram q = make_pgram(a0, a1, a2, a3);
  if (q.area() <= P.degenerate_tol()) return;
  ++counts.emitted;
  out.push_back(Candidate{q, src, u, up, anchor, false, false, ProbeResult::not_run, {src}});
}

// Subroutine-1 of the narrow search: u = e_i an edge, u' every unit chased by
// it, anchored corner candidates V swept through the separator bands. The
// case with u a vertex and u' an edge is this same routine run on the
// mirrored polygon.
void narrow_sweep(const Polygon& P, const ZTable& Z, std::vector<Candidate>& out,
                  SearchCounts& counts) {
  const int n = P.size();
  const double btol = P.on_boundary_tol();
  for (int i = 0; i < n; ++i) {
    const int k = P.farthest_vertex(i);
    // Candidate anchors: vertices of [v_i |> v_k]; their distances to l_i ascend.
    std::vector<int> sweep;
    std::vector<double> dv;
    for (int q = i;; q = P.mod(q + 1)) {
      sweep.push_back(P.mod(q));
      dv.push_back(P.line_dist(P.vertex(q), i));
      if (P.mod(q) == k) break;
    }
    // A_2 lives on the arc [D_i |> v_i], where the distance to l_i descends.
    ArcProfile zarc(P, i, k, i);
    std::size_t ptr = 0;

    auto hit_band = [&](double lo, double hi, Unit up) {
      while (ptr < sweep.size() && dv[ptr] < lo - btol) ++ptr;
      for (std::size_t q = ptr; q < sweep.size() && dv[q] <= hi + btol; ++q) {
        ++counts.narrow_triples;
        const int V = sweep[q];
        const Vec2 A0 = P.vertex(V);
        if (up.is_edge()) {
          const int j = up.index;
          const Vec2 A2 = Z.at(i, j).point;
          const auto [A3, A1] = midpoint_pair_on_lines(P.edge_line(i), P.edge_line(j),
                                                       midpoint(A0, A2), P.parallel_tol());
          if (!edge_param_ok(P, A3, i) || !edge_param_ok(P, A1, j)) continue;
          emit(out, P, A0, A1, A2, A3, Source::alg_narrow, Unit::edge(i), up, V, counts);
        } else {
          const int j = up.index;
          const double delta = P.line_dist(P.vertex(j), i) - dv[q];
          const auto A2 = zarc.at_cursor(delta);
          if (!A2) continue;
          const Vec2 A1 = P.vertex(j);
          const Vec2 A3 = A0 + A2->point - A1;
          if (!edge_param_ok(P, A3, i)) continue;
          emit(out, P, A0, A1, A2->point, A3, Source::alg_narrow, Unit::edge(i), up, V, counts);
        }
      }
    };

    // u' walks e_{i+1}, v_{i+2}, e_{i+2}, ..., v_{k-1}, e_{k-1}; the bands
    // tile the normal direction of e_i in this order.
    for (int j = P.mod(i + 1); j != k; j = P.mod(j + 1)) {
      const double hj = P.line_dist(Z.at(i, j).point, i);
      const double dj = P.line_dist(P.vertex(j), i);
      if (j != P.mod(i + 1)) {
        const double hprev = P.line_dist(Z.at(i, P.mod(j - 1)).point, i);
        hit_band(dj - hprev, dj - hj, Unit::vertex(j));
      }
      hit_band(dj - hj, P.line_dist(P.vertex(j + 1), i) - hj, Unit::edge(j));
    }
  }
}

Unit map_unit_from_mirror(const Polygon& P, Unit u) {
  return u.is_vertex() ? Unit::vertex(P.mod(P.size() - u.index))
                       : Unit::edge(P.mod(P.size() - 1 - u.index));
}

Candidate map_candidate_from_mirror(const Polygon& P, Candidate c) {
  const auto mp = [](Vec2 v) { return Vec2{v.x, -v.y}; };
  c.pgram = make_pgram(mp(c.pgram.c[0]), mp(c.pgram.c[3]), mp(c.pgram.c[2]), mp(c.pgram.c[1]));
  const Unit u = map_unit_from_mirror(P, c.uprime);  // A_3/A_1 swap under the mirror
  const Unit up = map_unit_from_mirror(P, c.u);
  c.u = u;
  c.uprime = up;
  if (c.anchor >= 0) c.anchor = P.mod(P.size() - c.anchor);
  return c;
}

// Vertices inside the closed portion [from |> to], clockwise.
template <typename F>
void vertices_in_portion(const Polygon& P, const BoundaryPoint& from, const BoundaryPoint& to,
                         F&& f) {
  const double tol = P.on_boundary_tol();
  const double L = P.perimeter();
  const double s0 = P.arc_of(from);
  double re = std::fmod(P.arc_of(to) - s0, L);
  if (re < 0) re += L;
  if (re >= L - tol) re = 0.0;
  int q = from.unit.is_vertex() ? from.unit.index : from.unit.index + 1;
  for (int steps = 0; steps < P.size(); ++steps, ++q) {
    double rq = std::fmod(P.arc_of_vertex(q) - s0, L);
    if (rq < 0) rq += L;
    if (rq >= L - tol) rq = 0.0;
    if (rq > re + tol) break;
    f(P.mod(q));
  }
}

}  // namespace

std::vector<Candidate> alg_narrow(const Polygon& P, const ZTable& Z, SearchCounts& counts) {
  std::vector<Candidate> out;
  narrow_sweep(P, Z, out, counts);

  const Polygon Pm = mirrored(P);
  const ZTable Zm = ZTable::build_full(Pm);
  std::vector<Candidate> mirror_out;
  narrow_sweep(Pm, Zm, mirror_out, counts);
  out.reserve(out.size() + mirror_out.size());
  for (Candidate& c : mirror_out) out.push_back(map_candidate_from_mirror(P, c));
  return out;
}

std::vector<Candidate> alg_broad(const Polygon& P, const ZTable& Z, SearchCounts& counts) {
  const int n = P.size();
  std::vector<Candidate> out;

  // (u, u') = (e_i, v_j): A_2 = V anchored, A_1 = v_j, A_3 on e_i,
  // A_0 on [v_{i+1} |> v_j] at the distance forced by the 2-scaling line.
  for (int i = 0; i < n; ++i) {
    const int k = P.farthest_vertex(i);
    ArcProfile prof(P, i, P.mod(i + 1), k);
    for (int j = P.mod(i + 2); j != k; j = P.mod(j + 1)) {
      const BoundaryPoint z1 = Z.at(i, P.mod(j - 1)), z2 = Z.at(i, j);
      vertices_in_portion(P, z1, z2, [&](int V) {
        ++counts.broad_triples;
        const Vec2 A2 = P.vertex(V);
        const double delta = P.line_dist(P.vertex(j), i) - P.line_dist(A2, i);
        const auto A0 = prof.at_cursor(delta);
        if (!A0) return;
        const Vec2 A1 = P.vertex(j);
        const Vec2 A3 = A0->point + A2 - A1;
        if (!edge_param_ok(P, A3, i)) return;
        emit(out, P, A0->point, A1, A2, A3, Source::alg_broad, Unit::edge(i), Unit::vertex(j),
             V, counts);
      });
    }
  }

  // (u, u') = (v_i, e_j): A_2 = V anchored, A_3 = v_i, A_1 on e_j,
  // A_0 on [v_i |> v_j].
  for (int j = 0; j < n; ++j) {
    const int k = P.farthest_vertex(j);  // edges chasing e_j start at e_k
    ArcProfile prof(P, j, k, j);
    for (int i = P.mod(k + 1); i != j; i = P.mod(i + 1)) {
      const BoundaryPoint z1 = Z.at(P.mod(i - 1), j), z2 = Z.at(i, j);
      vertices_in_portion(P, z1, z2, [&](int V) {
        ++counts.broad_triples;
        const Vec2 A2 = P.vertex(V);
        const double delta = P.line_dist(P.vertex(i), j) - P.line_dist(A2, j);
        const auto A0 = prof.at(delta);
        if (!A0) return;
        const Vec2 A3 = P.vertex(i);
        const Vec2 A1 = A0->point + A2 - A3;
        if (!edge_param_ok(P, A1, j)) return;
        emit(out, P, A0->point, A1, A2, A3, Source::alg_broad, Unit::vertex(i), Unit::edge(j),
             V, counts);
      });
    }
  }

  // (u, u') = (v_i, v_j): everything determined by reflection about
  // M(v_i, v_j).
  for (int i = 0; i < n; ++i) {
    const int cap1 = P.farthest_vertex(P.mod(i - 1));      // j may reach D_{i-1}
    const int cap2 = P.mod(P.farthest_vertex(i) - 1);      // and D_i - 1
    const long o1 = ((long(cap1) - (i + 1)) % n + n) % n;
    const long o2 = ((long(cap2) - (i + 1)) % n + n) % n;
    const long count = std::min(o1, o2) + 1;
    for (long q = 0; q < count; ++q) {
      const int j = P.mod(i + 1 + int(q));
      const BoundaryPoint z1 = Z.at(P.mod(i - 1), P.mod(j - 1)), z2 = Z.at(i, j);
      vertices_in_portion(P, z1, z2, [&](int V) {
        ++counts.broad_triples;
        const Vec2 A2 = P.vertex(V);
        const Vec2 A0 = P.vertex(i) + P.vertex(j) - A2;
        emit(out, P, A0, P.vertex(j), A2, P.vertex(i), Source::alg_broad, Unit::vertex(i),
             Unit::vertex(j), V, counts);
      });
    }
  }
  return out;
}

namespace {

std::optional<Vec2> intersect_mid_regions(const Polygon& P, const MidRegion& a,
                                          const MidRegion& b) {
  const double tol = P.on_boundary_tol();
  using Shape = MidRegion::Shape;
  if (a.shape == Shape::point && b.shape == Shape::point)
    return dist(a.corners[0], b.corners[0]) <= tol ? std::optional<Vec2>(a.corners[0])
                                                   : std::nullopt;
  if (a.shape == Shape::point || b.shape == Shape::point) {
    const Vec2 pt = (a.shape == Shape::point ? a : b).corners[0];
    const auto& seg = (a.shape == Shape::point ? b : a).corners;
    return dist_point_segment(pt, seg[0], seg[1]) <= tol ? std::optional<Vec2>(pt)
                                                         : std::nullopt;
  }
  // segment x segment
  const Vec2 p = a.corners[0], r = a.corners[1] - a.corners[0];
  const Vec2 q = b.corners[0], s = b.corners[1] - b.corners[0];
  const double den = cross(r, s);
  if (std::abs(den) <= P.parallel_tol() * norm(r) * norm(s)) return std::nullopt;
  const double t = cross(q - p, s) / den;
  const double u = cross(q - p, r) / den;
  const double bt = tol / norm(r), bu = tol / norm(s);
  if (t < -bt || t > 1.0 + bt || u < -bu || u > 1.0 + bu) return std::nullopt;
  return p + t * r;
}

// Opposite corner pair with midpoint C, corners constrained to the units of
// an S pair (at least one of which is a vertex).
std::optional<std::pair<Vec2, Vec2>> corners_from(const Polygon& P, Unit ua, Unit ub, Vec2 C) {
  const double tol = P.on_boundary_tol();
  Vec2 A, B;
  if (ua.is_vertex()) {
    A = P.vertex(ua.index);
    B = 2.0 * C - A;
    if (ub.is_vertex()) {
      if (dist(B, P.vertex(ub.index)) > tol) return std::nullopt;
      B = P.vertex(ub.index);
    } else if (!edge_param_ok(P, B, ub.index) ||
               std::abs(P.line_dist(B, ub.index)) > tol) {
      return std::nullopt;
    }
  } else {
    B = P.vertex(ub.index);
    A = 2.0 * C - B;
    if (!edge_param_ok(P, A, ua.index) || std::abs(P.line_dist(A, ua.index)) > tol)
      return std::nullopt;
  }
  return std::make_pair(A, B);
}

}  // namespace

std::vector<Candidate> alg_even(const Polygon& P, SearchCounts& counts) {
  std::vector<Candidate> out;
  const auto S = s_set(P);
  std::vector<MidRegion> regions;
  regions.reserve(S.size());
  for (const auto& [u, up] : S) regions.push_back(mid_region(P, u, up));

  for (std::size_t p = 0; p < S.size(); ++p) {
    for (std::size_t q = 0; q < S.size(); ++q) {
      if (p == q) continue;
      ++counts.even_triples;
      const auto C = intersect_mid_regions(P, regions[p], regions[q]);
      if (!C) continue;
      const auto a02 = corners_from(P, S[p].first, S[p].second, *C);
      if (!a02) continue;
      const auto a13 = corners_from(P, S[q].first, S[q].second, *C);
      if (!a13) continue;
      emit(out, P, a02->first, a13->first, a02->second, a13->second, Source::alg_even,
           S[p].first, S[p].second, -1, counts);
    }
  }
  return out;
}

namespace {

std::vector<Line> unit_lines(const Polygon& P, Unit u) {
  if (u.is_edge()) return {P.edge_line(u.index)};
  return {P.edge_line(u.index - 1), P.edge_line(u.index)};
}

ProbeResult run_probe(const Polygon& P, const Pgram& q,
                      const std::array<Polygon::Location, 4>& locs, const SearchOptions& opt) {
  const double area = q.area();
  const double slack = opt.probe_slack_rel * area;
  for (const double eps_f : opt.probe_eps) {
    const double eps = eps_f * P.perimeter();
    for (int c = 0; c < 4; ++c) {
      const double s = P.arc_of(BoundaryPoint{locs[c].unit, locs[c].t, locs[c].closest});
      const Vec2 opposite = q.c[(c + 2) % 4];
      for (const double sgn : {1.0, -1.0}) {
        const Vec2 X = P.point_at_arc(s + sgn * eps).point;
        for (const Line& l : unit_lines(P, locs[(c + 1) % 4].unit)) {
          for (const Line& lp : unit_lines(P, locs[(c + 3) % 4].unit)) {
            Pgram probe;
            try {
              probe = pgram_from_opposite(X, opposite, l, lp, P.quad_tol());
            } catch (const Error&) {
              continue;
            }
            bool feasible = true;
            for (const Vec2& corner : probe.c)
              feasible = feasible && P.contains(corner, P.containment_tol());
            if (feasible && probe.area() > area + slack) return ProbeResult::failed;
          }
        }
      }
    }
  }
  return ProbeResult::passed;
}

}  // namespace

Candidate validate(const Polygon& P, Candidate c, const SearchOptions& opt) {
  std::array<Polygon::Location, 4> locs;
  bool inscribed = true;
  for (int k = 0; k < 4; ++k) {
    locs[k] = P.locate(c.pgram.c[k]);
    inscribed = inscribed && locs[k].dist <= P.on_boundary_tol();
  }
  c.inscribed = inscribed;

  c.non_slidable = true;
  for (int a = 0; a < 4 && c.non_slidable; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (locs[a].unit.is_edge() && locs[a].unit == locs[b].unit) {
        c.non_slidable = false;
        break;
      }

  if (opt.probe && c.inscribed && c.non_slidable)
    c.probe = run_probe(P, c.pgram, locs, opt);
  return c;
}

std::array<Vec2, 4> canonical_corners(const Pgram& q) {
  auto less = [](Vec2 a, Vec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; };
  std::array<Vec2, 4> best = q.c;
  bool first = true;
  for (int rev = 0; rev < 2; ++rev) {
    for (int rot = 0; rot < 4; ++rot) {
      std::array<Vec2, 4> cand;
      for (int k = 0; k < 4; ++k)
        cand[k] = rev ? q.c[(rot + 4 - k) % 4] : q.c[(rot + k) % 4];
      bool smaller = false;
      if (!first) {
        for (int k = 0; k < 4; ++k) {
          if (less(cand[k], best[k])) { smaller = true; break; }
          if (less(best[k], cand[k])) break;
        }
      }
      if (first || smaller) best = cand;
      first = false;
    }
  }
  return best;
}

namespace {

bool same_pgram(const Pgram& a, const Pgram& b, double tol) {
  for (int rev = 0; rev < 2; ++rev) {
    for (int rot = 0; rot < 4; ++rot) {
      bool match = true;
      for (int k = 0; k < 4 && match; ++k) {
        const Vec2 bc = rev ? b.c[(rot + 4 - k) % 4] : b.c[(rot + k) % 4];
        match = dist(a.c[k], bc) <= tol;
      }
      if (match) return true;
    }
  }
  return false;
}

int flag_score(const Candidate& c) {
  return int(c.inscribed) + int(c.non_slidable) + int(c.probe == ProbeResult::passed) +
         int(c.sources.size());
}

}  // namespace

std::vector<Candidate> dedup(std::vector<Candidate> cands, const Polygon& P) {
  const double tol = P.on_boundary_tol();
  const double area_tol = 4.0 * tol * P.diameter();
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.pgram.area() > b.pgram.area();
                   });
  std::vector<Candidate> kept;
  for (Candidate& c : cands) {
    bool merged = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if (c.pgram.area() < it->pgram.area() - area_tol) break;  // sorted by area
      if (same_pgram(it->pgram, c.pgram, tol)) {
        for (Source s : c.sources)
          if (std::find(it->sources.begin(), it->sources.end(), s) == it->sources.end())
            it->sources.push_back(s);
        if (flag_score(c) > flag_score(*it)) {
          auto sources = it->sources;
          *it = c;
          it->sources = sources;
        }
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(c);
  }
  return kept;
}

LmapReport find_all_lmaps(const Polygon& P, const SearchOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  LmapReport report;

  const ZTable Z = ZTable::build_full(P);
  std::vector<Candidate> cands = alg_narrow(P, Z, report.counts);
  for (auto& v : alg_broad(P, Z, report.counts)) cands.push_back(std::move(v));
  for (auto& v : alg_even(P, report.counts)) cands.push_back(std::move(v));

  std::vector<Candidate> accepted, rejected;
  for (Candidate& c : cands) {
    Candidate v = validate(P, std::move(c), opt);
    (v.ok() ? accepted : rejected).push_back(std::move(v));
  }
  report.lmaps = dedup(std::move(accepted), P);
  if (opt.keep_rejected) report.rejected = dedup(std::move(rejected), P);

  // Largest area wins; exact ties resolve to the lexicographically smallest
  // canonical corner list.
  for (std::size_t k = 0; k < report.lmaps.size(); ++k) {
    if (report.map_index < 0) {
      report.map_index = int(k);
      continue;
    }
    const double best = report.lmaps[report.map_index].pgram.area();
    const double a = report.lmaps[k].pgram.area();
    if (a > best * (1.0 + 1e-12)) {
      report.map_index = int(k);
    } else if (a >= best * (1.0 - 1e-12)) {
      const auto ca = canonical_corners(report.lmaps[k].pgram);
      const auto cb = canonical_corners(report.lmaps[report.map_index].pgram);
      for (int m = 0; m < 4; ++m) {
        if (ca[m].x != cb[m].x || ca[m].y != cb[m].y) {
          if (ca[m].x < cb[m].x || (ca[m].x == cb[m].x && ca[m].y < cb[m].y))
            report.map_index = int(k);
          break;
        }
      }
    }
  }

  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

Candidate find_map(const Polygon& P, const SearchOptions& opt) {
  LmapReport report = find_all_lmaps(P, opt);
  if (report.map_index < 0) throw NoCandidates("no validated candidate parallelogram");
  return report.lmaps[report.map_index];
}

}  // namespace lmap
