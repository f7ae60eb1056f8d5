#pragma once

// Gaussian BIC over DAGs with a shared local-score cache, and the two mutual
// information estimators used for skeleton weights.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cimtree/error.hpp"
#include "cimtree/graph.hpp"

namespace cimtree {

inline constexpr double kResidualFloor = 1e-12;
inline constexpr double kCorrelationClamp = 1e-12;

struct GaussianSufficientStats {
  std::size_t n = 0;
  Eigen::MatrixXd cov;  // 1/n normalization
  std::vector<std::string> names;

  int node_count() const { return static_cast<int>(cov.rows()); }

  std::string name(Node i) const {
    if (static_cast<std::size_t>(i) < names.size()) return names[static_cast<std::size_t>(i)];
    return "X" + std::to_string(i);
  }

  static GaussianSufficientStats from_data(const Eigen::MatrixXd& data, std::vector<std::string> names = {}) {
    require(data.rows() >= 1, ErrorCode::TooSmall, "need at least one sample");
    require(names.empty() || names.size() == static_cast<std::size_t>(data.cols()), ErrorCode::DimensionMismatch,
            "name count differs from column count");
    GaussianSufficientStats s;
    s.n = static_cast<std::size_t>(data.rows());
    Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
    s.cov = (centered.transpose() * centered) / static_cast<double>(s.n);
    // exact symmetry, so (i, j) and (j, i) lookups agree bit for bit
    for (Eigen::Index a = 0; a < s.cov.rows(); ++a)
      for (Eigen::Index b = a + 1; b < s.cov.cols(); ++b) s.cov(b, a) = s.cov(a, b);
    s.names = std::move(names);
    return s;
  }
};

namespace detail {

inline std::uint64_t node_mask(const NodeSet& s) {
  std::uint64_t m = 0;
  for (Node x : s) m |= std::uint64_t{1} << x;
  return m;
}

inline std::string mask_text(std::uint64_t m) {
  std::string out = "{";
  bool first = true;
  for (int x = 0; m; ++x, m >>= 1)
    if (m & 1) {
      if (!first) out += ",";
      out += std::to_string(x);
      first = false;
    }
  return out + "}";
}

}  // namespace detail

// sigma^2_{i|Pa} = S_ii - S_{i,Pa} S_{Pa,Pa}^{-1} S_{Pa,i}
inline double residual_variance(Node i, std::uint64_t pa, const GaussianSufficientStats& stats) {
  const int p = stats.node_count();
  detail::check_node(i, p);
  require(!(pa >> i & 1), ErrorCode::InvalidArgument, "node is its own parent");
  std::vector<Eigen::Index> idx;
  for (int x = 0; x < p; ++x)
    if (pa >> x & 1) idx.push_back(x);
  require(p >= 64 || (pa >> p) == 0, ErrorCode::LabelOutOfRange, "parent outside the node range");
  double var = stats.cov(i, i);
  if (!idx.empty()) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd spp(k, k);
    Eigen::VectorXd spi(k);
    for (Eigen::Index a = 0; a < k; ++a) {
      spi(a) = stats.cov(idx[a], i);
      for (Eigen::Index b = 0; b < k; ++b) spp(a, b) = stats.cov(idx[a], idx[b]);
    }
    Eigen::VectorXd beta = spp.ldlt().solve(spi);
    var -= spi.dot(beta);
  }
  if (!(var >= kResidualFloor))
    fail(ErrorCode::SingularConditioning, "residual variance of " + stats.name(i) + " given " +
                                              detail::mask_text(pa) + " is below " + std::to_string(kResidualFloor));
  return var;
}

inline double local_bic(Node i, std::uint64_t pa, const GaussianSufficientStats& stats) {
  const double n = static_cast<double>(stats.n);
  const double var = residual_variance(i, pa, stats);
  const double k = static_cast<double>(std::popcount(pa));
  return -(n / 2.0) * (1.0 + std::log(2.0 * std::numbers::pi) + std::log(var)) - ((k + 1.0) / 2.0) * std::log(n);
}

inline double local_bic(Node i, const NodeSet& pa, const GaussianSufficientStats& stats) {
  return local_bic(i, detail::node_mask(pa), stats);
}

// (child, parent mask) -> local score. Insertions are serialized; a value is
// computed deterministically so racing writers store the same bits.
class LocalScoreCache {
 public:
  explicit LocalScoreCache(const GaussianSufficientStats& stats) : stats_(&stats) {
    require(stats.node_count() <= 64, ErrorCode::CapExceeded, "score cache keys need p <= 64");
  }

  const GaussianSufficientStats& stats() const { return *stats_; }

  double local(Node i, std::uint64_t pa) {
    const std::pair<Node, std::uint64_t> key{i, pa};
    {
      std::lock_guard lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) {
        ++hits_;
        return it->second;
      }
    }
    const double v = local_bic(i, pa, *stats_);
    std::lock_guard lock(mu_);
    map_.emplace(key, v);
    return v;
  }

  double local(Node i, const NodeSet& pa) { return local(i, detail::node_mask(pa)); }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return map_.size();
  }

  std::size_t hits() const {
    std::lock_guard lock(mu_);
    return hits_;
  }

 private:
  const GaussianSufficientStats* stats_;
  mutable std::mutex mu_;
  std::map<std::pair<Node, std::uint64_t>, double> map_;
  std::size_t hits_ = 0;
};

// Sum in node order; every total in this file goes through here so that
// differential and full scores share one summation order.
inline double sum_locals(const std::vector<double>& locals) {
  double s = 0.0;
  for (double v : locals) s += v;
  return s;
}

inline std::vector<double> local_scores(const Dag& d, LocalScoreCache& cache) {
  require(d.node_count() == cache.stats().node_count(), ErrorCode::DimensionMismatch,
          "DAG and data have different node counts");
  std::vector<double> out(static_cast<std::size_t>(d.node_count()));
  for (Node i = 0; i < d.node_count(); ++i) out[static_cast<std::size_t>(i)] = cache.local(i, d.parents(i));
  return out;
}

inline double bic(const Dag& d, LocalScoreCache& cache) { return sum_locals(local_scores(d, cache)); }

inline double bic(const Dag& d, const GaussianSufficientStats& stats) {
  LocalScoreCache cache(stats);
  return bic(d, cache);
}

// Score of d with the edges of t reversed, recomputing only nodes incident to t.
// `locals` are the local scores of d.
inline double reversal_score(const Dag& d, const std::vector<double>& locals, std::span<const Edge> t,
                             LocalScoreCache& cache) {
  require(locals.size() == static_cast<std::size_t>(d.node_count()), ErrorCode::DimensionMismatch,
          "local score vector length differs from node count");
  std::vector<std::pair<Node, std::uint64_t>> touched;
  auto slot = [&](Node x) -> std::uint64_t& {
    for (auto& [node, mask] : touched)
      if (node == x) return mask;
    touched.emplace_back(x, detail::node_mask(d.parents(x)));
    return touched.back().second;
  };
  for (const Edge& e : t) {
    Node from = e.u, to = e.v;
    if (!d.has_arc(from, to)) std::swap(from, to);
    require(d.has_arc(from, to), ErrorCode::SkeletonMismatch, "edge " + to_string(e) + " is not in the DAG");
    slot(to) &= ~(std::uint64_t{1} << from);
    slot(from) |= std::uint64_t{1} << to;
  }
  std::vector<double> next = locals;
  for (const auto& [x, mask] : touched) next[static_cast<std::size_t>(x)] = cache.local(x, mask);
  return sum_locals(next);
}

// -1/2 log(1 - rho^2), rho^2 clamped to [0, 1 - 1e-12]
inline double gaussian_mi(const GaussianSufficientStats& stats, Node i, Node j) {
  const int p = stats.node_count();
  detail::check_node(i, p);
  detail::check_node(j, p);
  for (Node x : {i, j})
    require(stats.cov(x, x) > 0.0, ErrorCode::ZeroVariance, "column " + stats.name(x) + " has zero variance");
  const double r = stats.cov(i, j) / std::sqrt(stats.cov(i, i) * stats.cov(j, j));
  const double r2 = std::clamp(r * r, 0.0, 1.0 - kCorrelationClamp);
  return -0.5 * std::log1p(-r2);
}

namespace detail {

inline std::vector<int> bin_column(const Eigen::MatrixXd& data, Eigen::Index c, int bins) {
  const double lo = data.col(c).minCoeff();
  const double hi = data.col(c).maxCoeff();
  std::vector<int> out(static_cast<std::size_t>(data.rows()), 0);
  if (!(hi > lo)) return out;
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    int k = static_cast<int>(std::floor((data(r, c) - lo) / (hi - lo) * bins));
    out[static_cast<std::size_t>(r)] = std::clamp(k, 0, bins - 1);
  }
  return out;
}

}  // namespace detail

// Plug-in mutual information over equal-width bins on each column's range.
inline double binned_mi(const Eigen::MatrixXd& data, Node i, Node j, int bins) {
  require(bins >= 2, ErrorCode::InvalidArgument, "need at least 2 bins");
  require(data.rows() >= 1, ErrorCode::TooSmall, "need at least one sample");
  detail::check_node(i, static_cast<int>(data.cols()));
  detail::check_node(j, static_cast<int>(data.cols()));
  const auto bi = detail::bin_column(data, i, bins);
  const auto bj = detail::bin_column(data, j, bins);
  const auto b = static_cast<std::size_t>(bins);
  std::vector<double> joint(b * b, 0.0), mi(b, 0.0), mj(b, 0.0);
  for (std::size_t r = 0; r < bi.size(); ++r) {
    const auto x = static_cast<std::size_t>(bi[r]), y = static_cast<std::size_t>(bj[r]);
    joint[x * b + y] += 1;
    mi[x] += 1;
    mj[y] += 1;
  }
  const double n = static_cast<double>(data.rows());
  double s = 0.0;
  for (std::size_t x = 0; x < b; ++x)
    for (std::size_t y = 0; y < b; ++y) {
      const double c = joint[x * b + y];
      if (c > 0) s += c / n * std::log(c * n / (mi[x] * mj[y]));
    }
  return std::max(s, 0.0);
}

}  // namespace cimtree
