// The three candidate-enumeration algorithms (anchored narrow corner,
// anchored broad corner with an anchored neighbor, four even corners),
// candidate validation, deduplication, and the LMAP/MAP queries.
#pragma once

#include <vector>

#include "lmap/clamping.hpp"
#include "lmap/pgram.hpp"

namespace lmap {

enum class Source { alg_narrow, alg_broad, alg_even, oracle };
enum class ProbeResult { not_run, passed, failed };

const char* to_string(Source s);
const char* to_string(ProbeResult p);

struct Candidate {
  Pgram pgram;
  Source source = Source::alg_narrow;
  Unit u, uprime;       // the unit pair that produced the candidate
  int anchor = -1;      // anchor vertex index, -1 when none
  bool inscribed = false;
  bool non_slidable = false;
  ProbeResult probe = ProbeResult::not_run;
  std::vector<Source> sources;  // provenance union after dedup

  bool ok() const { return inscribed && non_slidable && probe != ProbeResult::failed; }
};

struct SearchCounts {
  long narrow_triples = 0;
  long broad_triples = 0;
  long even_triples = 0;
  long emitted = 0;
  long total_triples() const { return narrow_triples + broad_triples + even_triples; }
};

struct SearchOptions {
  bool probe = true;          // run the sampled local-maximality probe
  bool keep_rejected = false; // retain failed candidates in the report
  double probe_eps[2] = {1e-4, 1e-5};  // as fractions of the perimeter
  double probe_slack_rel = 1e-10;      // of the candidate area
};

struct LmapReport {
  std::vector<Candidate> lmaps;     // validated, deduplicated
  std::vector<Candidate> rejected;  // deduplicated, only with keep_rejected
  int map_index = -1;               // into lmaps
  SearchCounts counts;
  double elapsed_ms = 0.0;
};

std::vector<Candidate> alg_narrow(const Polygon& P, const ZTable& Z, SearchCounts& counts);
std::vector<Candidate> alg_broad(const Polygon& P, const ZTable& Z, SearchCounts& counts);
std::vector<Candidate> alg_even(const Polygon& P, SearchCounts& counts);

// Fills the inscribed / non_slidable flags and optionally runs the probe:
// each corner is nudged +-eps along the boundary, the opposite corner held,
// the remaining two re-solved on the neighbor units' lines; the probe fails
// if a feasible nudge grows the area beyond the slack.
Candidate validate(const Polygon& P, Candidate c, const SearchOptions& opt);

// Quotient by cyclic rotation and reversal of corner labels within
// coordinate tolerance; merged candidates keep the union of their sources.
std::vector<Candidate> dedup(std::vector<Candidate> cands, const Polygon& P);

LmapReport find_all_lmaps(const Polygon& P, const SearchOptions& opt = {});
Candidate find_map(const Polygon& P, const SearchOptions& opt = {});  // throws NoCandidates

// Corner labels reordered into the canonical (lexicographically smallest)
// form used for deterministic comparisons.
std::array<Vec2, 4> canonical_corners(const Pgram& q);

}  // namespace lmap
