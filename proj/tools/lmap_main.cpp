// Command line front end: LMAP/MAP queries, the brute-force oracle, the
// four-point placement solver, polygon generation, and the selftest suite.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lmap/analysis.hpp"
#include "lmap/io.hpp"

namespace {

struct CommonArgs {
  std::string input;
  int regular = 0;
  int random = 0;
  std::optional<std::uint64_t> seed;
  bool perturb = false;
  double perturb_eps = 1e-7;
  double tol_scale = 1.0;
  std::string output;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_polygon) {
  if (needs_polygon) {
    cmd->add_option("input", a.input, "polygon JSON file");
    cmd->add_option("--regular", a.regular, "use a regular k-gon as input");
    cmd->add_option("--random", a.random, "use a seeded random n-gon as input");
  }
  cmd->add_option("--seed", a.seed, "RNG seed (required with --random or --perturb)");
  cmd->add_flag("--perturb", a.perturb, "perturbation mode for parallel-edge inputs");
  cmd->add_option("--perturb-eps", a.perturb_eps, "perturbation angle bound in radians");
  cmd->add_option("--tol-scale", a.tol_scale, "multiplies all tolerances");
  cmd->add_option("-o,--output", a.output, "write to file instead of stdout");
}

lmap::BuildOptions build_opts(const CommonArgs& a) {
  lmap::BuildOptions opts;
  opts.tol_scale = a.tol_scale;
  opts.perturb = a.perturb;
  opts.perturb_eps = a.perturb_eps;
  opts.seed = a.seed.value_or(0);
  return opts;
}

lmap::Polygon resolve_polygon(const CommonArgs& a) {
  const int sources = int(!a.input.empty()) + int(a.regular > 0) + int(a.random > 0);
  if (sources != 1)
    throw lmap::InputError("give exactly one of: input file, --regular k, --random n");
  if ((a.random > 0 || a.perturb) && !a.seed)
    throw lmap::InputError("--seed is required with --random and --perturb");
  if (a.regular > 0) return lmap::gen_regular(a.regular, build_opts(a));
  if (a.random > 0) return lmap::gen_random(a.random, *a.seed, build_opts(a));
  return lmap::read_polygon_file(a.input, build_opts(a));
}

void write_out(const CommonArgs& a, const std::string& text) {
  if (a.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(a.output);
  if (!out) throw lmap::InputError("cannot write " + a.output);
  out << text;
}

void print_pgram(std::ostream& os, const lmap::Pgram& q) {
  os << "area " << q.area() << ", corners";
  for (const auto& c : q.c) os << " (" << c.x << ", " << c.y << ")";
  os << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locally maximal area parallelograms in a convex polygon"};
  app.require_subcommand(1);

  CommonArgs args;
  lmap::SearchOptions search;
  std::string format = "json";
  int samples = 120;
  int threads = 1;
  std::string inject_fault;

  auto* lmaps = app.add_subcommand("lmaps", "compute all LMAPs");
  auto* map = app.add_subcommand("map", "compute the maximum area parallelogram");
  auto* heil = app.add_subcommand("heilbronn4", "optimal 4-point min-triangle placement");
  auto* oracle = app.add_subcommand("oracle", "brute-force boundary-sampling search");
  auto* gen = app.add_subcommand("gen", "generate a polygon JSON");
  auto* selftest = app.add_subcommand("selftest", "run the invariant families");

  for (CLI::App* cmd : {lmaps, map, heil, oracle, selftest}) {
    add_common(cmd, args, true);
    cmd->add_flag("--probe,!--no-probe", search.probe, "local-maximality probe (default on)");
    cmd->add_flag("--keep-rejected", search.keep_rejected, "retain failed candidates");
    cmd->add_option("--threads", threads, "worker threads for the oracle scan");
  }
  add_common(gen, args, false);
  gen->add_option("--regular", args.regular, "regular k-gon");
  gen->add_option("--random", args.random, "seeded random n-gon");
  for (CLI::App* cmd : {lmaps, map})
    cmd->add_option("--format", format, "json | svg | text")
        ->check(CLI::IsMember({"json", "svg", "text"}));
  for (CLI::App* cmd : {oracle, selftest})
    cmd->add_option("--samples,-N", samples, "boundary samples");
  selftest->add_option("--inject-fault", inject_fault, "testing aid: corrupt one family");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if ((args.regular > 0) == (args.random > 0))
        throw lmap::InputError("gen needs exactly one of --regular k, --random n");
      if (args.random > 0 && !args.seed)
        throw lmap::InputError("--seed is required with --random");
      const lmap::Polygon P = args.regular > 0
                                  ? lmap::gen_regular(args.regular, build_opts(args))
                                  : lmap::gen_random(args.random, *args.seed, build_opts(args));
      write_out(args, lmap::polygon_to_json(P));
      return 0;
    }

    const lmap::Polygon P = resolve_polygon(args);

    if (lmaps->parsed() || map->parsed()) {
      const lmap::LmapReport report = lmap::find_all_lmaps(P, search);
      if (map->parsed()) {
        if (report.map_index < 0) throw lmap::NoCandidates("no validated candidate");
        const lmap::Candidate& best = report.lmaps[report.map_index];
        if (format == "text") {
          std::ostringstream os;
          os.precision(12);
          print_pgram(os, best.pgram);
          write_out(args, os.str());
        } else {
          lmap::LmapReport only;
          only.lmaps = {best};
          only.map_index = 0;
          only.counts = report.counts;
          only.elapsed_ms = report.elapsed_ms;
          write_out(args, format == "svg" ? lmap::report_to_svg(P, only)
                                          : lmap::report_to_json(P, only));
        }
        return 0;
      }
      if (format == "svg") {
        write_out(args, lmap::report_to_svg(P, report));
      } else if (format == "text") {
        std::ostringstream os;
        os.precision(12);
        os << report.lmaps.size() << " LMAPs (map index " << report.map_index << ")\n";
        for (const auto& c : report.lmaps) print_pgram(os, c.pgram);
        write_out(args, os.str());
      } else {
        write_out(args, lmap::report_to_json(P, report));
      }
      return 0;
    }

    if (heil->parsed()) {
      const lmap::Heilbronn4Result r = lmap::heilbronn4(P, search);
      std::ostringstream os;
      os.precision(12);
      os << "value " << r.value << " (t " << r.t << ", p " << r.p << ")\nplacement";
      for (const auto& c : r.placement) os << " (" << c.x << ", " << c.y << ")";
      os << "\n";
      write_out(args, os.str());
      return 0;
    }

    if (oracle->parsed()) {
      const lmap::OracleResult r = lmap::oracle_map(P, samples, threads);
      std::ostringstream os;
      os.precision(12);
      os << "best ";
      print_pgram(os, r.best);
      os << "samples " << r.samples << ", slack_estimate " << r.slack_estimate << "\n";
      write_out(args, os.str());
      return 0;
    }

    // selftest
    lmap::SelftestOptions opt;
    opt.oracle_samples = samples;
    opt.search = search;
    opt.inject_fault = inject_fault;
    const auto results = lmap::run_selftest(P, opt);
    std::string first_fail;
    for (const auto& r : results) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.family << ": " << r.detail << "\n";
      if (!r.pass && first_fail.empty()) first_fail = r.family;
    }
    if (!first_fail.empty()) {
      std::cerr << "selftest failed: " << first_fail << "\n";
      return 1;
    }
    return 0;
  } catch (const lmap::Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 2;
  }
}
