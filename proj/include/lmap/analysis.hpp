// Cross-validation machinery: the brute-force boundary-sampling oracle, the
// interleaving verifier, structural constraint checks, the four-point
// min-triangle reduction, the non-concavity witness, and polygon generators.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lmap/search.hpp"

namespace lmap {

// Both quadrilaterals must be inscribed; true iff every closed clockwise arc
// between consecutive corners of one contains a corner of the other.
bool interleaves(const Polygon& P, const Pgram& q1, const Pgram& q2);

struct InterleaveReport {
  bool all_ok = true;
  std::vector<std::pair<int, int>> violations;
};
InterleaveReport verify_interleaving(const Polygon& P, const std::vector<Pgram>& pgrams);

struct OracleResult {
  Pgram best;
  int samples = 0;
  double slack_estimate = 0.0;  // area underestimate bound from sampling density
};

// Constant in the oracle slack bound c * perimeter * diameter / samples,
// pinned against the algorithm on the seeded random-polygon corpus.
inline constexpr double kOracleSlackC = 3.0;
// Exhaustive search over triples of arc-uniform boundary samples with the
// fourth corner derived and containment-tested; O(N^3).
OracleResult oracle_map(const Polygon& P, int samples, int threads = 1);

struct MaxTriangle {
  std::array<Vec2, 3> corners;
  double area = 0.0;
};
// O(n^3) over vertex triples; the maximum-area triangle has its corners at
// polygon vertices.
MaxTriangle max_area_triangle(const Polygon& P);

// Area of the smallest among the four triangles spanned by the points.
double min_triangle_area(const std::array<Vec2, 4>& pts);

struct Heilbronn4Result {
  double value = 0.0;
  std::array<Vec2, 4> placement;
  double t = 0.0;  // maximum triangle area
  double p = 0.0;  // maximum parallelogram area
};
// Optimal four-point placement maximizing the smallest spanned triangle:
// value = max(t/3, p/2), realized by the triangle plus its centroid or by
// the parallelogram corners.
Heilbronn4Result heilbronn4(const Polygon& P, const SearchOptions& opt = {});

// Determinant objective evaluated at the two witness vectors and their
// midpoint; returns (2, 2, 0), exhibiting non-concavity.
std::array<double, 3> nonconcavity_witness();

// Regular k-gon with unit circumradius (even k has parallel edges and is
// rejected unless opts.perturb is set).
Polygon gen_regular(int k, const BuildOptions& opts = {});
// Seeded random convex n-gon (random-vector chaining construction), redrawn
// until the validity constraints hold; throws GenerationFailed at the cap.
Polygon gen_random(int n, std::uint64_t seed, const BuildOptions& opts = {});

// Structural constraints every probe-passed LMAP must satisfy.
struct StructureReport {
  int checked = 0;
  int anchor_violations = 0;   // no corner at a polygon vertex
  int broad_violations = 0;    // broad corner outside zeta(u, u')
  int even_violations = 0;     // even corner outside generalized zeta(u, u')
  bool ok() const { return !anchor_violations && !broad_violations && !even_violations; }
};
StructureReport check_structure(const Polygon& P, const ZTable& Z,
                                const std::vector<Candidate>& lmaps);

// Worst relative error of the area identity over seeded random line/point
// instances restricted to a common quadrant.
double area_identity_max_rel_err(int trials, std::uint64_t seed);

struct SelftestResult {
  std::string family;
  bool pass = false;
  std::string detail;
};
struct SelftestOptions {
  int oracle_samples = 80;
  int portion_samples = 301;
  std::string inject_fault;  // family name to corrupt, test hook
  SearchOptions search;
};
std::vector<SelftestResult> run_selftest(const Polygon& P, const SelftestOptions& opt = {});

}  // namespace lmap
