// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cimtree/enumerate.hpp"
#include "cimtree/learn.hpp"
#include "cimtree/moves.hpp"
#include "cimtree/polytope.hpp"
#include "cimtree/score.hpp"
#include "cimtree/sim.hpp"
#include "cimtree/verify.hpp"
#include "fixtures.hpp"

#ifndef CIMTREE_CLI_PATH
#error "CIMTREE_CLI_PATH must name the cimtree binary"
#endif

using namespace cimtree;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string suite_detail(const SuiteResult& r) {
  std::string s = std::to_string(r.checks) + " checks, " + std::to_string(r.mismatches) + " mismatches";
  if (!r.passed()) s += "; first: " + r.counterexample;
  return s;
}

Outcome trees() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t edge_checks = 0, table_checks = 0, bad = 0;
  std::string first;
  for (int p = 3; p <= 6; ++p)
    for (const auto& t : nonisomorphic_trees(p)) {
      const auto vs = cim_vertices(t);
      const auto e = polytope_edges(vs, threads());
      const std::set<std::pair<std::size_t, std::size_t>> edges(e.begin(), e.end());
      const auto& reps = vs.representatives();
      for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
          ++edge_checks;
          const bool lp = edges.count({a, b}) > 0;
          if (lp != is_essential_flip(reps[a], reps[b]).has_value() && bad++ == 0)
            first = detail::pair_text("LP edge vs essential flip", t, reps[a], reps[b]);
        }
      const auto subtrees = enumerate_subtrees(t);
      for (const auto& g : enumerate_acyclic_orientations(t))
        for (auto mask : subtrees.masks()) {
          ++table_checks;
          const auto s = subtrees.edges_of(mask);
          const Dag h = g.with_reversed(s);
          if (is_essential_flip_local(g, s) != is_essential_flip(g, h).has_value() && bad++ == 0)
            first = detail::pair_text("local table vs definition", t, g, h);
        }
    }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << edge_checks << " vertex pairs, " << table_checks << " (DAG, subtree) pairs, " << bad << " mismatches, " << secs
    << " s";
  if (bad) d << "; first: " << first;
  return {bad == 0 && secs < 300, d.str()};
}

Outcome paths_and_cycles() {
  const auto paths = verify_paths(6, threads());
  const auto cycles = verify_cycles(5, threads());
  bool ok = paths.passed() && cycles.passed();
  std::ostringstream d;
  d << "paths: " << suite_detail(paths) << "; cycles: " << suite_detail(cycles) << "; vertices";
  const std::array<std::pair<int, std::size_t>, 3> expected{{{3, 2}, {4, 3}, {5, 5}}};
  for (auto [p, want] : expected) {
    const auto n = cim_vertices(path_graph(p)).size();
    d << " I" << p << "=" << n;
    ok = ok && n == want;
  }
  const auto c4 = cim_vertices(cycle_graph(4)).size();
  d << " C4=" << c4;
  return {ok && c4 == 6, d.str()};
}

Outcome simplices() {
  struct Case {
    std::string name;
    UndirectedGraph g;
    std::size_t dim;
    std::size_t vertices;
  };
  std::vector<Case> cases;
  for (int k = 2; k <= 4; ++k) {
    const std::size_t dim = (std::size_t{1} << k) - static_cast<std::size_t>(k) - 1;
    cases.push_back({"star" + std::to_string(k), star_graph(k), dim, dim + 1});
  }
  cases.push_back({"K2uK2", star_like_graph({2, 2}), 9, 10});
  cases.push_back({"K4-e", complete_minus_edge(4), 3, 4});
  cases.push_back({"K5-e", complete_minus_edge(5), 7, 8});
  bool ok = true;
  std::ostringstream d;
  for (const auto& c : cases) {
    const auto vs = cim_vertices(c.g);
    const auto dim = affine_dimension(vs);
    d << c.name << ": d=" << dim << " v=" << vs.size() << "; ";
    ok = ok && verify_simplex(vs) && dim == c.dim && vs.size() == c.vertices;
  }
  return {ok, d.str()};
}

Outcome stab() {
  const auto r = verify_stab(5, 7, threads());
  return {r.passed(), suite_detail(r)};
}

Outcome square_witness() {
  std::size_t checks = 0, bad = 0;
  std::string first;
  for (int p = 3; p <= 6; ++p)
    for (const auto& t : nonisomorphic_trees(p)) {
      const auto vs = cim_vertices(t);
      const auto e = polytope_edges(vs, threads());
      const std::set<std::pair<std::size_t, std::size_t>> edges(e.begin(), e.end());
      for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
          if (edges.count({a, b})) continue;
          ++checks;
          if (!square_nonedge_witness(vs, a, b) && bad++ == 0)
            first = detail::pair_text("no square witness", t, vs.representatives()[a], vs.representatives()[b]);
        }
    }
  std::string d = std::to_string(checks) + " non-edges, " + std::to_string(bad) + " without witness";
  if (bad) d += "; first: " + first;
  return {bad == 0 && checks > 0, d};
}

Outcome moves() {
  const auto r = verify_moves(5);
  return {r.passed(), suite_detail(r)};
}

std::vector<UndirectedGraph> labeled_trees(int p) {
  if (p == 2) return {UndirectedGraph(2, {{0, 1}})};
  std::vector<UndirectedGraph> out;
  std::vector<Node> code(static_cast<std::size_t>(p - 2), 0);
  for (;;) {
    out.push_back(prufer_decode(code, p));
    std::size_t k = 0;
    while (k < code.size() && ++code[k] == p) code[k++] = 0;
    if (k == code.size()) break;
  }
  return out;
}

Outcome score() {
  std::size_t pairs = 0, bad_eq = 0;
  double worst = 0;
  for (int p = 2; p <= 5; ++p) {
    Rng rng(500 + static_cast<std::uint64_t>(p));
    const auto sem = random_sem(p, rng);
    const auto stats = GaussianSufficientStats::from_data(sample(sem, 1000, rng));
    LocalScoreCache cache(stats);
    for (const auto& t : labeled_trees(p)) {
      std::map<std::vector<VStructure>, double> first;
      for (const auto& d : fixtures::tree_orientations(t)) {
        const double s = bic(d, cache);
        auto [it, fresh] = first.emplace(v_structures(d), s);
        if (fresh) continue;
        ++pairs;
        const double rel = std::abs(s - it->second) / std::abs(it->second);
        worst = std::max(worst, rel);
        bad_eq += rel > 1e-9;
      }
    }
  }
  std::size_t diffs = 0, bad_diff = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(900 + seed);
    const auto sem = random_sem(8, rng);
    const auto stats = GaussianSufficientStats::from_data(sample(sem, 400, rng));
    LocalScoreCache cache(stats);
    Subtrees subtrees(sem.dag.skeleton());
    for (int start = 0; start < 3; ++start) {
      const Dag d = random_polytree(sem.dag.skeleton(), rng);
      const auto locals = local_scores(d, cache);
      for (auto mask : subtrees.masks()) {
        const auto t = subtrees.edges_of(mask);
        ++diffs;
        bad_diff += reversal_score(d, locals, t, cache) != bic(d.with_reversed(t), stats);
      }
    }
  }
  std::ostringstream out;
  out << pairs << " equivalent pairs, worst relative gap " << worst << ", " << bad_eq << " over 1e-9; " << diffs
      << " differential scores, " << bad_diff << " not bit-identical";
  return {bad_eq == 0 && bad_diff == 0 && pairs > 0, out.str()};
}

Outcome end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  BenchConfig cfg;
  cfg.p = 10;
  cfg.trials = 100;
  cfg.sample_sizes = {250, 1000, 10000};
  cfg.algorithms = {WalkKind::Eft};
  cfg.seed = 0;
  cfg.threads = threads();
  const auto rep = run_benchmark(cfg);
  std::map<std::size_t, BenchSummary> by_n;
  for (const auto& s : rep.summary) by_n[s.n] = s;
  const auto& a = by_n.at(250);
  const auto& b = by_n.at(1000);
  const auto& c = by_n.at(10000);
  const double secs = seconds_since(t0);
  const bool ok = c.exact_fraction >= 0.40 && a.exact_fraction >= 0.15 && c.median >= 0.95 && a.median <= b.median &&
                  b.median <= c.median && secs < 1200;
  std::ostringstream d;
  d << "exact@250=" << a.exact_fraction << " exact@10000=" << c.exact_fraction << " medians " << a.median << " / "
    << b.median << " / " << c.median << ", " << secs << " s";
  return {ok, d.str()};
}

// stdout of a shell command, or nullopt when it exits nonzero
std::optional<std::string> capture(const std::string& cmd) {
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return std::nullopt;
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), got);
  if (pclose(f) != 0) return std::nullopt;
  return out;
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("cimtree_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = CIMTREE_CLI_PATH;
  const std::string csv = (dir / "data.csv").string();
  const std::string truth = (dir / "truth.txt").string();
  const std::vector<std::string> commands = {
      "--seed 11 sample --p 8 --n 3000",
      "--seed 11 --format csv sample --p 8 --n 3000",
      "--seed 3 discover " + csv,
      "--seed 3 --format csv discover " + csv,
      "--seed 3 discover --restarts 3 --alg reversal " + csv,
      "--seed 3 discover --mi binned --bins 8 --skeleton " + truth + " " + csv,
      "--seed 5 --threads 2 simulate --p 8 --n 100,1000 --trials 6 --alg eft,reversal",
      "--seed 5 --format csv simulate --p 6 --n 200 --trials 4 --true-skeleton",
      "verify --suite trees --max-p 5",
      "--format csv verify --suite simplices --max-p 5",
  };
  std::string detail;
  bool ok = capture(cli + " --seed 11 sample --p 8 --n 3000 --truth " + truth + " > " + csv).has_value();
  if (!ok) detail = "could not write sample data; ";
  std::size_t same = 0;
  for (const auto& c : commands) {
    const auto a = capture(cli + " " + c + " 2>/dev/null");
    const auto b = capture(cli + " " + c + " 2>/dev/null");
    if (a && b && !a->empty() && *a == *b) {
      ++same;
    } else {
      ok = false;
      detail += "differs or failed: " + c + "; ";
    }
  }
  fs::remove_all(dir);
  detail += std::to_string(same) + "/" + std::to_string(commands.size()) + " invocations byte-identical";
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"trees: LP edges equal essential flips, local table equals definition (p<=6)", trees},
      {"paths and cycles: edge characterization and vertex counts", paths_and_cycles},
      {"simplices: stars, K2uK2 star-like graph, K4-e and K5-e", simplices},
      {"stab: Chvatal vs LP (graphs p<=5), stable face (trees p<=7)", stab},
      {"square witness for every non-edge on trees p<=6", square_witness},
      {"moves: shifts/splits are flips, turn pairs give valid reversals (p<=5)", moves},
      {"score: BIC equivalence and exact differential scoring", score},
      {"end-to-end recovery: p=10, 100 trials", end_to_end},
      {"determinism: repeated CLI runs are byte-identical", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << " -- " << o.detail << std::endl;
  }
  return failed;
}
