#pragma once

// Random linear Gaussian polytree SEMs, sampling, the essential-graph accuracy
// metric and the seeded benchmark harness.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cimtree/enumerate.hpp"
#include "cimtree/error.hpp"
#include "cimtree/graph.hpp"
#include "cimtree/learn.hpp"
#include "cimtree/rng.hpp"

namespace cimtree {

struct PolytreeSem {
  Dag dag;
  std::vector<double> weights;  // weights[k] belongs to dag.arcs()[k]

  int node_count() const { return dag.node_count(); }

  double weight(Node from, Node to) const {
    const auto& arcs = dag.arcs();
    auto it = std::lower_bound(arcs.begin(), arcs.end(), Arc{from, to});
    require(it != arcs.end() && *it == Arc{from, to}, ErrorCode::InvalidArgument,
            "no arc " + to_string(Arc{from, to}));
    return weights[static_cast<std::size_t>(it - arcs.begin())];
  }
};

// Uniform labeled tree from a Pruefer code, coin orientations, weights
// u * sign with u ~ U(0, 1] and a fair sign.
inline PolytreeSem random_sem(int p, Rng& rng) {
  require(p >= 2, ErrorCode::TooSmall, "random_sem needs p >= 2");
  std::uniform_int_distribution<Node> label(0, p - 1);
  std::vector<Node> code(static_cast<std::size_t>(p - 2));
  for (auto& x : code) x = label(rng);
  const auto tree = prufer_decode(code, p);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<Arc, double>> arcs;
  for (const Edge& e : tree.edges()) {
    Arc a = coin(rng) ? Arc{e.u, e.v} : Arc{e.v, e.u};
    const double u = 1.0 - unit(rng);
    arcs.emplace_back(a, coin(rng) ? -u : u);
  }
  std::sort(arcs.begin(), arcs.end());
  PolytreeSem sem;
  std::vector<Arc> only;
  for (const auto& [a, w] : arcs) {
    only.push_back(a);
    sem.weights.push_back(w);
  }
  sem.dag = Dag(p, std::move(only));
  return sem;
}

// Rows are drawn one at a time, nodes in topological order within a row.
inline Eigen::MatrixXd sample(const PolytreeSem& sem, std::size_t n, Rng& rng) {
  require(n >= 1, ErrorCode::TooSmall, "need n >= 1");
  const int p = sem.node_count();
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::vector<std::pair<Node, double>>> in(static_cast<std::size_t>(p));
  for (std::size_t k = 0; k < sem.dag.arcs().size(); ++k) {
    const Arc& a = sem.dag.arcs()[k];
    in[static_cast<std::size_t>(a.to)].emplace_back(a.from, sem.weights[k]);
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), p);
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Node i : sem.dag.topological_order()) {
      double v = noise(rng);
      for (const auto& [k, w] : in[static_cast<std::size_t>(i)]) v += w * x(r, k);
      x(r, i) = v;
    }
  return x;
}

// (I - L)^{-T} (I - L)^{-1} with L(k, i) = weight of k -> i
inline Eigen::MatrixXd implied_covariance(const PolytreeSem& sem) {
  const int p = sem.node_count();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t k = 0; k < sem.dag.arcs().size(); ++k) {
    const Arc& a = sem.dag.arcs()[k];
    l(a.from, a.to) = sem.weights[k];
  }
  Eigen::MatrixXd inv = (Eigen::MatrixXd::Identity(p, p) - l).inverse();
  return inv.transpose() * inv;
}

// A[i][j] = 1 iff i -> j or i -- j; fraction of agreeing off-diagonal entries.
inline double essential_accuracy(const PartiallyDirectedGraph& est, const PartiallyDirectedGraph& truth) {
  require(est.node_count() == truth.node_count(), ErrorCode::DimensionMismatch, "node counts differ");
  const int p = est.node_count();
  if (p < 2) return 1.0;
  const auto a = est.adjacency_matrix();
  const auto b = truth.adjacency_matrix();
  int agree = 0;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      if (i != j && a[i][j] == b[i][j]) ++agree;
  return static_cast<double>(agree) / static_cast<double>(p * p - p);
}

enum class RngStream : std::uint64_t { Model = 1, Data = 2, Walk = 3 };

// Model k is drawn from (seed, Model, k) and so does not depend on n.
inline PolytreeSem trial_model(std::uint64_t seed, int p, int trial) {
  Rng rng = make_rng(seed, {static_cast<std::uint64_t>(RngStream::Model), static_cast<std::uint64_t>(trial)});
  return random_sem(p, rng);
}

inline Eigen::MatrixXd trial_data(const PolytreeSem& sem, std::uint64_t seed, int trial, std::size_t n) {
  Rng rng = make_rng(seed, {static_cast<std::uint64_t>(RngStream::Data), static_cast<std::uint64_t>(trial), n});
  return sample(sem, n, rng);
}

inline std::uint64_t trial_walk_seed(std::uint64_t seed, int trial, std::size_t n) {
  return derive_seed(seed, {static_cast<std::uint64_t>(RngStream::Walk), static_cast<std::uint64_t>(trial), n});
}

struct BenchConfig {
  int p = 10;
  std::vector<std::size_t> sample_sizes{25, 50, 250, 500, 1000, 10000};
  int trials = 100;
  std::vector<WalkKind> algorithms{WalkKind::Eft};
  std::uint64_t seed = 0;
  int threads = 1;
  bool true_skeleton = false;  // hand the walk the generating skeleton
  MiKind mi_kind = MiKind::Gaussian;
  int bins = 10;
  int restarts = 1;
};

struct BenchRow {
  WalkKind algorithm = WalkKind::Eft;
  std::size_t n = 0;
  int trial = 0;
  std::uint64_t seed = 0;  // walk seed of this cell
  double accuracy = 0;
  bool exact_recovery = false;
  int iterations = 0;
  double wall_ms = 0;
};

struct BenchSummary {
  WalkKind algorithm = WalkKind::Eft;
  std::size_t n = 0;
  int trials = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  double exact_fraction = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;  // sorted by (algorithm, n, trial)
  std::vector<BenchSummary> summary;
};

// Linear interpolation between order statistics (the usual "type 7").
inline double quantile(std::vector<double> v, double q) {
  require(!v.empty(), ErrorCode::EmptySet, "quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double h = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline BenchRow run_trial(const BenchConfig& cfg, WalkKind alg, std::size_t n, int trial) {
  const auto sem = trial_model(cfg.seed, cfg.p, trial);
  const auto data = trial_data(sem, cfg.seed, trial, n);
  EftConfig ec;
  ec.mi_kind = cfg.mi_kind;
  ec.bins = cfg.bins;
  ec.restarts = cfg.restarts;
  ec.seed = trial_walk_seed(cfg.seed, trial, n);
  if (cfg.true_skeleton) ec.skeleton = sem.dag.skeleton();
  const auto rep = run_walk(alg, data, ec);
  const auto truth = essential_graph_forest(sem.dag);
  BenchRow row;
  row.algorithm = alg;
  row.n = n;
  row.trial = trial;
  row.seed = ec.seed;
  row.accuracy = essential_accuracy(rep.essential, truth);
  row.exact_recovery = rep.essential == truth;
  row.iterations = static_cast<int>(rep.trace.size());
  row.wall_ms = rep.wall_ms;
  return row;
}

inline std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows) {
  std::map<std::pair<WalkKind, std::size_t>, std::vector<const BenchRow*>> cells;
  for (const auto& r : rows) cells[{r.algorithm, r.n}].push_back(&r);
  std::vector<BenchSummary> out;
  for (const auto& [key, cell] : cells) {
    std::vector<double> acc;
    int exact = 0;
    for (const auto* r : cell) {
      acc.push_back(r->accuracy);
      exact += r->exact_recovery;
    }
    BenchSummary s;
    s.algorithm = key.first;
    s.n = key.second;
    s.trials = static_cast<int>(cell.size());
    s.min = quantile(acc, 0.0);
    s.q1 = quantile(acc, 0.25);
    s.median = quantile(acc, 0.5);
    s.q3 = quantile(acc, 0.75);
    s.max = quantile(acc, 1.0);
    s.exact_fraction = static_cast<double>(exact) / static_cast<double>(cell.size());
    out.push_back(s);
  }
  return out;
}

// Cells run on up to cfg.threads workers; rows come back in canonical order
// whatever the schedule.
inline BenchReport run_benchmark(const BenchConfig& cfg) {
  require(cfg.p >= 2, ErrorCode::TooSmall, "p must be at least 2");
  require(cfg.trials >= 1, ErrorCode::TooSmall, "trials must be at least 1");
  require(!cfg.sample_sizes.empty(), ErrorCode::EmptySet, "no sample sizes");
  for (auto n : cfg.sample_sizes) require(n >= 2, ErrorCode::TooSmall, "sample sizes must be at least 2");
  auto algs = cfg.algorithms;
  std::sort(algs.begin(), algs.end());
  algs.erase(std::unique(algs.begin(), algs.end()), algs.end());
  auto sizes = cfg.sample_sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  struct Cell {
    WalkKind alg;
    std::size_t n;
    int trial;
  };
  std::vector<Cell> cells;
  for (auto a : algs)
    for (auto n : sizes)
      for (int t = 0; t < cfg.trials; ++t) cells.push_back({a, n, t});

  BenchReport rep;
  rep.config = cfg;
  rep.rows.resize(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      try {
        rep.rows[k] = run_trial(cfg, cells[k].alg, cells[k].n, cells[k].trial);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(cells.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)  // first failing cell in canonical order
    if (e) std::rethrow_exception(e);
  rep.summary = summarize(rep.rows);
  return rep;
}

}  // namespace cimtree
