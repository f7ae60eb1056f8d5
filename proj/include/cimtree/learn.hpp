#pragma once

// Polytree learning: an MI-weighted spanning tree for the skeleton, then a
// greedy walk over essential flips scored by BIC.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cimtree/error.hpp"
#include "cimtree/graph.hpp"
#include "cimtree/moves.hpp"
#include "cimtree/rng.hpp"
#include "cimtree/score.hpp"

namespace cimtree {

enum class MiKind { Gaussian, Binned };
enum class WalkKind { Eft, Reversal };

inline std::string to_string(MiKind k) { return k == MiKind::Gaussian ? "gaussian" : "binned"; }
inline std::string to_string(WalkKind k) { return k == WalkKind::Eft ? "eft" : "reversal"; }

struct EftConfig {
  MiKind mi_kind = MiKind::Gaussian;
  int bins = 10;
  std::size_t subtree_cap = 0;  // max edges per flipped subtree; 0 means no limit
  std::uint64_t seed = 0;
  int max_iterations = 0;  // 0 means 10 p^2
  int restarts = 1;
  std::optional<UndirectedGraph> skeleton;  // skips the spanning-tree phase when set
};

struct TraceStep {
  MoveDescriptor move;
  double score_before = 0;
  double score_after = 0;
};

struct RunReport {
  WalkKind walk = WalkKind::Eft;
  UndirectedGraph skeleton;
  Dag start;
  Dag dag;
  PartiallyDirectedGraph essential;
  std::vector<TraceStep> trace;
  double score = 0;
  int restart = 0;  // index of the restart that produced this report
  double wall_ms = 0;
};

// Kruskal on the strict upper triangle; ties go to the smaller (i, j).
// Non-finite weights are skipped, which can leave a forest.
inline UndirectedGraph mwst_skeleton(const Eigen::MatrixXd& weights) {
  require(weights.rows() == weights.cols(), ErrorCode::DimensionMismatch, "weight matrix is not square");
  const int p = static_cast<int>(weights.rows());
  std::vector<std::tuple<double, Node, Node>> cand;
  for (Node i = 0; i < p; ++i)
    for (Node j = i + 1; j < p; ++j)
      if (std::isfinite(weights(i, j))) cand.emplace_back(weights(i, j), i, j);
  std::sort(cand.begin(), cand.end());
  std::vector<Node> root(static_cast<std::size_t>(p));
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](Node x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  std::vector<Edge> edges;
  for (const auto& [w, i, j] : cand) {
    Node a = find(i), b = find(j);
    if (a == b) continue;
    root[std::max(a, b)] = std::min(a, b);
    edges.push_back({i, j});
  }
  return UndirectedGraph(p, std::move(edges));
}

// -MI on the off-diagonal, zero on the diagonal.
inline Eigen::MatrixXd mi_weights(const GaussianSufficientStats& stats) {
  const int p = stats.node_count();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
  for (Node i = 0; i < p; ++i)
    for (Node j = i + 1; j < p; ++j) w(i, j) = w(j, i) = -gaussian_mi(stats, i, j);
  return w;
}

inline Eigen::MatrixXd mi_weights(const Eigen::MatrixXd& data, int bins) {
  const int p = static_cast<int>(data.cols());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
  for (Node i = 0; i < p; ++i)
    for (Node j = i + 1; j < p; ++j) w(i, j) = w(j, i) = -binned_mi(data, i, j, bins);
  return w;
}

// Each edge of the forest gets an independent fair coin, in sorted edge order.
inline Dag random_polytree(const UndirectedGraph& g, Rng& rng) {
  require(g.is_forest(), ErrorCode::NonForestSkeleton, "random_polytree needs a forest");
  std::vector<Arc> arcs;
  for (const Edge& e : g.edges()) arcs.push_back(coin(rng) ? Arc{e.u, e.v} : Arc{e.v, e.u});
  return Dag(g.node_count(), std::move(arcs));
}

namespace detail {

inline RunReport greedy_walk(const UndirectedGraph& skel, Dag dag, LocalScoreCache& cache, const EftConfig& cfg,
                             WalkKind walk) {
  const int p = skel.node_count();
  const int cap = cfg.max_iterations > 0 ? cfg.max_iterations : 10 * p * p;
  const std::size_t limit = walk == WalkKind::Reversal ? 1 : cfg.subtree_cap;
  Subtrees subtrees(skel, kDefaultSubtreeCap, limit);

  RunReport rep;
  rep.walk = walk;
  rep.skeleton = skel;
  rep.start = dag;
  auto locals = local_scores(dag, cache);
  double current = sum_locals(locals);
  for (;;) {
    double best = current;
    std::optional<std::uint32_t> pick;
    for (std::uint32_t mask : subtrees.masks()) {
      const auto t = subtrees.edges_of(mask);
      const double s = reversal_score(dag, locals, t, cache);
      // the flip check is the expensive part; only improving candidates need it
      if (s > best && is_essential_flip_local(dag, t)) {
        best = s;
        pick = mask;
      }
    }
    if (!pick) break;
    if (static_cast<int>(rep.trace.size()) >= cap)
      fail(ErrorCode::IterationCapExceeded, "walk did not stop within " + std::to_string(cap) + " moves");
    const auto t = subtrees.edges_of(*pick);
    dag = dag.with_reversed(t);
    locals = local_scores(dag, cache);
    const double next = sum_locals(locals);
    rep.trace.push_back({EssentialFlip{t}, current, next});
    current = next;
  }
  rep.dag = dag;
  rep.essential = essential_graph_forest(dag);
  rep.score = current;
  return rep;
}

inline RunReport learn(const GaussianSufficientStats& stats, const Eigen::MatrixXd* data, const EftConfig& cfg,
                       WalkKind walk) {
  const auto t0 = std::chrono::steady_clock::now();
  const int p = stats.node_count();
  require(p >= 2, ErrorCode::TooSmall, "need at least 2 variables");
  require(stats.n >= 2, ErrorCode::TooSmall, "need at least 2 samples");
  require(cfg.restarts >= 1, ErrorCode::InvalidArgument, "restarts must be at least 1");
  for (Node i = 0; i < p; ++i)
    require(stats.cov(i, i) > 0.0, ErrorCode::ZeroVariance, "column " + stats.name(i) + " has zero variance");

  UndirectedGraph skel;
  if (cfg.skeleton) {
    skel = *cfg.skeleton;
    require(skel.node_count() == p, ErrorCode::DimensionMismatch, "skeleton and data have different node counts");
    require(skel.is_forest(), ErrorCode::NonForestSkeleton, "skeleton must be a forest");
  } else if (cfg.mi_kind == MiKind::Gaussian) {
    skel = mwst_skeleton(mi_weights(stats));
  } else {
    require(cfg.bins >= 2, ErrorCode::InvalidArgument, "need at least 2 bins");
    require(data != nullptr, ErrorCode::InvalidArgument, "binned mutual information needs the data matrix");
    skel = mwst_skeleton(mi_weights(*data, cfg.bins));
  }

  LocalScoreCache cache(stats);
  std::optional<RunReport> best;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = make_rng(cfg.seed, {static_cast<std::uint64_t>(r)});
    auto rep = greedy_walk(skel, random_polytree(skel, rng), cache, cfg, walk);
    rep.restart = r;
    if (!best || rep.score > best->score) best = std::move(rep);
  }
  best->wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return std::move(*best);
}

}  // namespace detail

inline RunReport eft(const Eigen::MatrixXd& data, const EftConfig& cfg, std::vector<std::string> names = {}) {
  auto stats = GaussianSufficientStats::from_data(data, std::move(names));
  return detail::learn(stats, &data, cfg, WalkKind::Eft);
}

inline RunReport eft(const GaussianSufficientStats& stats, const EftConfig& cfg) {
  return detail::learn(stats, nullptr, cfg, WalkKind::Eft);
}

inline RunReport reversal_walk(const Eigen::MatrixXd& data, const EftConfig& cfg,
                               std::vector<std::string> names = {}) {
  auto stats = GaussianSufficientStats::from_data(data, std::move(names));
  return detail::learn(stats, &data, cfg, WalkKind::Reversal);
}

inline RunReport reversal_walk(const GaussianSufficientStats& stats, const EftConfig& cfg) {
  return detail::learn(stats, nullptr, cfg, WalkKind::Reversal);
}

inline RunReport run_walk(WalkKind walk, const Eigen::MatrixXd& data, const EftConfig& cfg,
                          std::vector<std::string> names = {}) {
  return walk == WalkKind::Eft ? eft(data, cfg, std::move(names)) : reversal_walk(data, cfg, std::move(names));
}

}  // namespace cimtree
