#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cimtree/data_io.hpp"
#include "cimtree/edge_list_io.hpp"
#include "cimtree/learn.hpp"
#include "cimtree/report.hpp"
#include "cimtree/sim.hpp"
#include "cimtree/verify.hpp"

namespace {

using namespace cimtree;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kDegenerate = 3;

struct Globals {
  std::uint64_t seed = 0;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string output;
  std::string format = "json";
  bool timing = false;
};

// Writes to --output, or stdout when none was given.
void emit(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  require(out.good(), ErrorCode::InvalidArgument, "cannot write " + g.output);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

MiKind parse_mi(const std::string& s) { return s == "binned" ? MiKind::Binned : MiKind::Gaussian; }
WalkKind parse_walk(const std::string& s) { return s == "reversal" ? WalkKind::Reversal : WalkKind::Eft; }

struct DiscoverArgs {
  std::string csv;
  std::string mi = "gaussian";
  int bins = 10;
  std::string skeleton = "auto";
  int restarts = 1;
  std::string alg = "eft";
  std::size_t subtree_cap = 0;
};

int cmd_discover(const Globals& g, const DiscoverArgs& a) {
  const auto table = read_csv_file(a.csv);
  if (auto c = constant_column(table)) {
    std::cerr << "error: column " << table.names[*c] << " has zero variance\n";
    return kDegenerate;
  }
  EftConfig cfg;
  cfg.mi_kind = parse_mi(a.mi);
  cfg.bins = a.bins;
  cfg.seed = g.seed;
  cfg.restarts = a.restarts;
  cfg.subtree_cap = a.subtree_cap;
  if (a.skeleton != "auto") {
    std::ifstream in(a.skeleton);
    require(in.good(), ErrorCode::ParseError, "cannot open " + a.skeleton);
    cfg.skeleton = read_edge_list(in).skeleton();
  }
  const auto rep = run_walk(parse_walk(a.alg), table.values, cfg, table.names);
  if (g.format == "csv") {
    std::ostringstream out;
    write_run_csv(out, rep);
    emit(g, out.str());
  } else {
    RunContext ctx{table.names, static_cast<std::size_t>(table.values.rows()), cfg, g.timing};
    emit(g, dump(run_json(rep, ctx)));
  }
  return kOk;
}

struct SimulateArgs {
  int p = 10;
  std::vector<std::size_t> n{25, 50, 250, 500, 1000, 10000};
  int trials = 100;
  std::vector<std::string> alg{"eft"};
  bool true_skeleton = false;
  std::string mi = "gaussian";
  int bins = 10;
  int restarts = 1;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a) {
  BenchConfig cfg;
  cfg.p = a.p;
  cfg.sample_sizes = a.n;
  cfg.trials = a.trials;
  cfg.algorithms.clear();
  for (const auto& s : a.alg) cfg.algorithms.push_back(parse_walk(s));
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  cfg.true_skeleton = a.true_skeleton;
  cfg.mi_kind = parse_mi(a.mi);
  cfg.bins = a.bins;
  cfg.restarts = a.restarts;
  const auto rep = run_benchmark(cfg);
  for (const auto& s : rep.summary)
    std::fprintf(stderr, "%-8s n=%-6zu median=%.4f q1=%.4f q3=%.4f exact=%.2f\n", to_string(s.algorithm).c_str(), s.n,
                 s.median, s.q1, s.q3, s.exact_fraction);
  if (g.format == "csv") {
    std::ostringstream out;
    write_bench_csv(out, rep, g.timing);
    emit(g, out.str());
  } else {
    emit(g, dump(bench_json(rep, g.timing)));
  }
  return kOk;
}

struct VerifyArgs {
  std::string suite = "all";
  int max_p = 6;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  const auto results = run_suites(a.suite, a.max_p, g.threads);
  bool ok = true;
  for (const auto& r : results) {
    std::fprintf(stderr, "%-10s %s  checks=%zu mismatches=%zu\n", r.name.c_str(), r.passed() ? "pass" : "FAIL",
                 r.checks, r.mismatches);
    if (!r.passed()) {
      ok = false;
      std::cerr << "counterexample (" << r.name << "):\n" << r.counterexample << "\n";
    }
  }
  if (g.format == "csv") {
    std::ostringstream out;
    write_verify_csv(out, results);
    emit(g, out.str());
  } else {
    emit(g, dump(verify_json(results, a.suite, a.max_p)));
  }
  return ok ? kOk : kMismatch;
}

struct SampleArgs {
  int p = 10;
  std::size_t n = 1000;
  std::string truth;
};

// CSV data from a seeded random polytree SEM; --truth saves its DAG.
int cmd_sample(const Globals& g, const SampleArgs& a) {
  Rng model = make_rng(g.seed, {static_cast<std::uint64_t>(RngStream::Model)});
  const auto sem = random_sem(a.p, model);
  Rng data = make_rng(g.seed, {static_cast<std::uint64_t>(RngStream::Data)});
  DataTable t;
  for (int i = 0; i < a.p; ++i) t.names.push_back("X" + std::to_string(i));
  t.values = sample(sem, a.n, data);
  std::ostringstream out;
  write_csv(out, t);
  emit(g, out.str());
  if (!a.truth.empty()) {
    std::ofstream f(a.truth);
    require(f.good(), ErrorCode::InvalidArgument, "cannot write " + a.truth);
    write_edge_list(f, sem.dag);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polytree causal discovery with essential flips, and exact checks on characteristic imset polytopes"};
  app.name("cimtree");
  app.require_subcommand(1);
  app.fallthrough();
  app.get_formatter()->column_width(36);

  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads for benchmark trials and LP edge checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--output", g.output, "Write the report to this file (default: stdout)");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_flag("--timing", g.timing, "Record wall-clock times in reports (makes them non-reproducible)");

  DiscoverArgs da;
  auto* discover = app.add_subcommand("discover", "Learn an essential graph from a CSV data file");
  discover->add_option("csv", da.csv, "Data file: header row of names, numeric rows")->required();
  discover->add_option("--mi", da.mi, "Mutual information estimator")
      ->check(CLI::IsMember({"gaussian", "binned"}))
      ->capture_default_str();
  discover->add_option("--bins", da.bins, "Bins per column for --mi binned")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  discover->add_option("--skeleton", da.skeleton, "Edge-list file with the skeleton, or auto for the MI spanning tree")
      ->capture_default_str();
  discover->add_option("--restarts", da.restarts, "Random starts; the best final score wins")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  discover->add_option("--alg", da.alg, "Walk: eft (subtree flips) or reversal (single edges)")
      ->check(CLI::IsMember({"eft", "reversal"}))
      ->capture_default_str();
  discover->add_option("--subtree-cap", da.subtree_cap, "Max edges per flipped subtree (0: no limit)")
      ->capture_default_str();

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Benchmark on random polytree SEMs");
  simulate->add_option("--p", sa.p, "Variables per model")->check(CLI::Range(2, 25))->capture_default_str();
  simulate->add_option("--n", sa.n, "Sample sizes, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}))
      ->capture_default_str();
  simulate->add_option("--trials", sa.trials, "Models per sample size")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  simulate->add_option("--alg", sa.alg, "Algorithms, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember({"eft", "reversal"}))
      ->capture_default_str();
  simulate->add_flag("--true-skeleton", sa.true_skeleton, "Give the walk the generating skeleton");
  simulate->add_option("--mi", sa.mi, "Mutual information estimator")
      ->check(CLI::IsMember({"gaussian", "binned"}))
      ->capture_default_str();
  simulate->add_option("--bins", sa.bins, "Bins per column for --mi binned")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  simulate->add_option("--restarts", sa.restarts, "Random starts per run")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Exhaustive polytope and move cross-checks; exit 1 on a mismatch");
  verify->add_option("--suite", va.suite, "Suite to run")
      ->check(CLI::IsMember({"trees", "paths", "cycles", "simplices", "stab", "moves", "all"}))
      ->capture_default_str();
  verify->add_option("--max-p", va.max_p, "Largest node count (clamped to each suite's cap)")
      ->check(CLI::Range(3, 8))
      ->capture_default_str();

  SampleArgs pa;
  auto* samp = app.add_subcommand("sample", "Write CSV data drawn from a seeded random polytree SEM");
  samp->add_option("--p", pa.p, "Variables")->check(CLI::Range(2, 1000))->capture_default_str();
  samp->add_option("--n", pa.n, "Rows")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}))->capture_default_str();
  samp->add_option("--truth", pa.truth, "Also write the generating DAG as an edge list here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*discover) return cmd_discover(g, da);
    if (*simulate) return cmd_simulate(g, sa);
    if (*verify) return cmd_verify(g, va);
    if (*samp) return cmd_sample(g, pa);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool degenerate = e.code() == ErrorCode::ZeroVariance || e.code() == ErrorCode::SingularConditioning;
    return degenerate ? kDegenerate : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
