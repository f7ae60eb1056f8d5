#pragma once

// JSON and CSV renderings of run, benchmark and verification reports. Edge
// lists are sorted so reports diff cleanly.

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include "cimtree/learn.hpp"
#include "cimtree/sim.hpp"
#include "cimtree/verify.hpp"

namespace cimtree {

using Json = nlohmann::ordered_json;

// shortest text that reads back to the same double
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline Json edge_pairs_json(const std::vector<Edge>& edges) {
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  Json out = Json::array();
  for (const Edge& e : sorted) out.push_back({e.u, e.v});
  return out;
}

// {from, to, directed}; undirected edges list the smaller node first
inline Json essential_json(const PartiallyDirectedGraph& g) {
  struct Row {
    Node from, to;
    bool directed;
    auto operator<=>(const Row&) const = default;
  };
  std::vector<Row> rows;
  for (const Arc& a : g.directed()) rows.push_back({a.from, a.to, true});
  for (const Edge& e : g.undirected()) rows.push_back({e.u, e.v, false});
  std::sort(rows.begin(), rows.end());
  Json out = Json::array();
  for (const auto& r : rows) out.push_back({{"from", r.from}, {"to", r.to}, {"directed", r.directed}});
  return out;
}

struct RunContext {
  std::vector<std::string> names;
  std::size_t n = 0;
  EftConfig config;
  bool timing = false;
};

inline Json run_json(const RunReport& rep, const RunContext& ctx) {
  Json j;
  j["algorithm"] = to_string(rep.walk);
  j["n"] = ctx.n;
  j["p"] = rep.skeleton.node_count();
  j["variables"] = ctx.names;
  j["mi"] = to_string(ctx.config.mi_kind);
  if (ctx.config.mi_kind == MiKind::Binned) j["bins"] = ctx.config.bins;
  j["seed"] = ctx.config.seed;
  j["restarts"] = ctx.config.restarts;
  j["best_restart"] = rep.restart;
  j["skeleton_source"] = ctx.config.skeleton ? "user" : "mwst";
  j["skeleton"] = edge_pairs_json(rep.skeleton.edges());
  j["essential_graph"] = essential_json(rep.essential);
  j["adjacency_encoding"] = "A[i][j] = 1 iff i -> j or i -- j";
  j["score"] = rep.score;
  Json trace = Json::array();
  for (std::size_t k = 0; k < rep.trace.size(); ++k) {
    const auto& step = rep.trace[k];
    Json s;
    s["step"] = k + 1;
    s["move"] = describe(step.move);
    if (const auto* f = std::get_if<EssentialFlip>(&step.move)) s["subtree"] = edge_pairs_json(f->subtree);
    s["score_before"] = step.score_before;
    s["score_after"] = step.score_after;
    trace.push_back(std::move(s));
  }
  j["trace"] = std::move(trace);
  j["wall_ms"] = ctx.timing ? rep.wall_ms : 0.0;
  return j;
}

// one row per essential-graph edge
inline void write_run_csv(std::ostream& out, const RunReport& rep) {
  out << "from,to,directed\n";
  for (const auto& e : essential_json(rep.essential))
    out << e["from"].get<int>() << ',' << e["to"].get<int>() << ',' << (e["directed"].get<bool>() ? 1 : 0) << '\n';
}

inline Json bench_json(const BenchReport& rep, bool timing) {
  Json j;
  Json cfg;
  cfg["p"] = rep.config.p;
  cfg["sample_sizes"] = rep.config.sample_sizes;
  cfg["trials"] = rep.config.trials;
  Json algs = Json::array();
  for (auto a : rep.config.algorithms) algs.push_back(to_string(a));
  cfg["algorithms"] = algs;
  cfg["seed"] = rep.config.seed;
  cfg["true_skeleton"] = rep.config.true_skeleton;
  cfg["mi"] = to_string(rep.config.mi_kind);
  if (rep.config.mi_kind == MiKind::Binned) cfg["bins"] = rep.config.bins;
  cfg["restarts"] = rep.config.restarts;
  j["config"] = std::move(cfg);
  j["adjacency_encoding"] = "A[i][j] = 1 iff i -> j or i -- j";
  Json summary = Json::array();
  for (const auto& s : rep.summary)
    summary.push_back({{"algorithm", to_string(s.algorithm)},
                       {"n", s.n},
                       {"trials", s.trials},
                       {"accuracy_min", s.min},
                       {"accuracy_q1", s.q1},
                       {"accuracy_median", s.median},
                       {"accuracy_q3", s.q3},
                       {"accuracy_max", s.max},
                       {"exact_recovery_fraction", s.exact_fraction}});
  j["summary"] = std::move(summary);
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"algorithm", to_string(r.algorithm)},
                    {"n", r.n},
                    {"trial", r.trial},
                    {"seed", r.seed},
                    {"accuracy", r.accuracy},
                    {"exact_recovery", r.exact_recovery},
                    {"iterations", r.iterations},
                    {"wall_ms", timing ? r.wall_ms : 0.0}});
  j["rows"] = std::move(rows);
  return j;
}

inline void write_bench_csv(std::ostream& out, const BenchReport& rep, bool timing) {
  out << "algorithm,n,trial,seed,accuracy,exact_recovery,iterations,wall_ms\n";
  for (const auto& r : rep.rows)
    out << to_string(r.algorithm) << ',' << r.n << ',' << r.trial << ',' << r.seed << ','
        << format_double(r.accuracy) << ',' << (r.exact_recovery ? 1 : 0) << ',' << r.iterations << ','
        << format_double(timing ? r.wall_ms : 0.0) << '\n';
}

inline Json verify_json(const std::vector<SuiteResult>& results, const std::string& suite, int max_p) {
  Json j;
  j["suite"] = suite;
  j["max_p"] = max_p;
  bool ok = true;
  Json list = Json::array();
  for (const auto& r : results) {
    ok = ok && r.passed();
    Json s{{"name", r.name}, {"checks", r.checks}, {"mismatches", r.mismatches}, {"passed", r.passed()}};
    if (!r.passed()) s["counterexample"] = r.counterexample;
    list.push_back(std::move(s));
  }
  j["passed"] = ok;
  j["suites"] = std::move(list);
  return j;
}

inline void write_verify_csv(std::ostream& out, const std::vector<SuiteResult>& results) {
  out << "suite,checks,mismatches,passed\n";
  for (const auto& r : results)
    out << r.name << ',' << r.checks << ',' << r.mismatches << ',' << (r.passed() ? 1 : 0) << '\n';
}

}  // namespace cimtree
