#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "cimtree/enumerate.hpp"
#include "cimtree/score.hpp"
#include "cimtree/sim.hpp"
#include "fixtures.hpp"

using namespace cimtree;

namespace {

Eigen::MatrixXd simulated(int p, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auto sem = random_sem(p, rng);
  return sample(sem, n, rng);
}

// Least-squares residual of column i on the columns in pa, straight from the
// centered data (QR), as an independent route to the local score.
double oracle_local_bic(const Eigen::MatrixXd& data, Node i, const NodeSet& pa) {
  const double n = static_cast<double>(data.rows());
  Eigen::MatrixXd c = data.rowwise() - data.colwise().mean();
  Eigen::VectorXd y = c.col(i);
  Eigen::VectorXd r = y;
  if (!pa.empty()) {
    Eigen::MatrixXd x(c.rows(), static_cast<Eigen::Index>(pa.size()));
    for (std::size_t k = 0; k < pa.size(); ++k) x.col(static_cast<Eigen::Index>(k)) = c.col(pa[k]);
    Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
    r = y - x * beta;
  }
  const double var = r.squaredNorm() / n;
  return -(n / 2) * (1 + std::log(2 * std::numbers::pi) + std::log(var)) -
         ((static_cast<double>(pa.size()) + 1) / 2) * std::log(n);
}

std::vector<UndirectedGraph> labeled_trees(int p) {
  std::vector<UndirectedGraph> out;
  if (p == 2) return {UndirectedGraph(2, {{0, 1}})};
  std::vector<Node> code(static_cast<std::size_t>(p - 2), 0);
  for (;;) {
    out.push_back(prufer_decode(code, p));
    std::size_t k = 0;
    while (k < code.size() && ++code[k] == p) code[k++] = 0;
    if (k == code.size()) break;
  }
  return out;
}

}  // namespace

TEST(Stats, CovarianceIsMaximumLikelihoodAndSymmetric) {
  Eigen::MatrixXd x(4, 2);
  x << 1, 2, 2, 4, 3, 6, 6, 0;
  auto s = GaussianSufficientStats::from_data(x, {"a", "b"});
  EXPECT_EQ(s.n, 4u);
  // means 3, 3; deviations (-2,-1,0,3), (-1,1,3,-3)
  EXPECT_NEAR(s.cov(0, 0), 14.0 / 4, 1e-12);
  EXPECT_NEAR(s.cov(1, 1), 20.0 / 4, 1e-12);
  EXPECT_NEAR(s.cov(0, 1), -8.0 / 4, 1e-12);
  EXPECT_EQ(s.cov(0, 1), s.cov(1, 0));
  EXPECT_EQ(s.name(1), "b");
}

TEST(LocalBic, MarginalCase) {
  auto data = simulated(3, 200, 11);
  auto s = GaussianSufficientStats::from_data(data);
  const double n = 200;
  const double expect = -(n / 2) * (1 + std::log(2 * std::numbers::pi) + std::log(s.cov(1, 1))) - 0.5 * std::log(n);
  EXPECT_DOUBLE_EQ(local_bic(1, NodeSet{}, s), expect);
}

TEST(LocalBic, MatchesLeastSquaresOracle) {
  auto data = simulated(5, 500, 3);
  auto s = GaussianSufficientStats::from_data(data);
  for (Node i = 0; i < 5; ++i)
    for (std::uint64_t m = 0; m < 32; ++m) {
      if (m >> i & 1) continue;
      NodeSet pa;
      for (Node x = 0; x < 5; ++x)
        if (m >> x & 1) pa.push_back(x);
      const double want = oracle_local_bic(data, i, pa);
      EXPECT_NEAR(local_bic(i, pa, s), want, 1e-9 * std::abs(want)) << i << " " << m;
    }
}

TEST(LocalBic, CollinearParentRaises) {
  Eigen::MatrixXd x(50, 2);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  for (int r = 0; r < 50; ++r) {
    x(r, 0) = z(rng);
    x(r, 1) = 3 * x(r, 0);
  }
  auto s = GaussianSufficientStats::from_data(x);
  try {
    local_bic(1, NodeSet{0}, s);
    FAIL() << "expected SingularConditioning";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularConditioning);
  }
}

TEST(LocalBic, RejectsSelfParent) {
  auto s = GaussianSufficientStats::from_data(simulated(3, 20, 1));
  EXPECT_THROW(local_bic(1, NodeSet{1}, s), Error);
}

TEST(Bic, ArclessIsSumOfMarginals) {
  auto s = GaussianSufficientStats::from_data(simulated(4, 100, 2));
  double want = 0;
  for (Node i = 0; i < 4; ++i) want += local_bic(i, NodeSet{}, s);
  EXPECT_DOUBLE_EQ(bic(Dag(4), s), want);
}

TEST(Bic, CacheHitsAreBitIdentical) {
  auto s = GaussianSufficientStats::from_data(simulated(4, 100, 5));
  LocalScoreCache cache(s);
  Dag d(4, {{0, 1}, {2, 1}, {1, 3}});
  const double first = bic(d, cache);
  const auto size = cache.size();
  EXPECT_EQ(bic(d, cache), first);
  EXPECT_EQ(cache.size(), size);
  EXPECT_GE(cache.hits(), 4u);
  EXPECT_EQ(cache.local(1, NodeSet{0, 2}), local_bic(1, NodeSet{0, 2}, s));
}

// every labeled tree on p <= 5 nodes, every orientation, grouped by class
TEST(Bic, ScoreEquivalenceOnAllPolytrees) {
  std::size_t pairs = 0;
  for (int p = 2; p <= 5; ++p) {
    auto data = simulated(p, 1000, 100 + static_cast<std::uint64_t>(p));
    auto s = GaussianSufficientStats::from_data(data);
    LocalScoreCache cache(s);
    for (const auto& t : labeled_trees(p)) {
      std::map<std::vector<VStructure>, double> first;
      for (const auto& d : fixtures::tree_orientations(t)) {
        const double score = bic(d, cache);
        auto [it, fresh] = first.emplace(v_structures(d), score);
        if (fresh) continue;
        ++pairs;
        EXPECT_LE(std::abs(score - it->second), 1e-9 * std::abs(it->second)) << p;
      }
    }
  }
  EXPECT_GT(pairs, 1000u);
}

TEST(Bic, DifferentialEqualsFullExactly) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    auto sem = random_sem(8, rng);
    auto s = GaussianSufficientStats::from_data(sample(sem, 300, rng));
    LocalScoreCache cache(s);
    Subtrees subtrees(sem.dag.skeleton());
    for (int start = 0; start < 4; ++start) {
      Dag d(8);
      {
        std::vector<Arc> arcs;
        for (const Edge& e : sem.dag.skeleton().edges()) arcs.push_back(coin(rng) ? Arc{e.u, e.v} : Arc{e.v, e.u});
        d = Dag(8, arcs);
      }
      const auto locals = local_scores(d, cache);
      for (auto mask : subtrees.masks()) {
        const auto t = subtrees.edges_of(mask);
        LocalScoreCache fresh(s);
        EXPECT_EQ(reversal_score(d, locals, t, cache), bic(d.with_reversed(t), fresh));
      }
    }
  }
}

TEST(Bic, DifferentialRejectsForeignEdge) {
  auto s = GaussianSufficientStats::from_data(simulated(3, 50, 1));
  LocalScoreCache cache(s);
  Dag d(3, {{0, 1}});
  auto locals = local_scores(d, cache);
  std::vector<Edge> t{{1, 2}};
  EXPECT_THROW(reversal_score(d, locals, t, cache), Error);
}

// Reversing an arc of a true collider away from the collider loses to the
// generating DAG at large n.
TEST(Bic, RestoringTrueColliderImprovesScore) {
  int tried = 0, improved = 0;
  for (std::uint64_t seed = 0; tried < 100; ++seed) {
    Rng rng(seed);
    auto sem = random_sem(6, rng);
    Node collider = -1;
    for (Node i = 0; i < 6; ++i)
      if (sem.dag.parents(i).size() >= 2) collider = i;
    if (collider < 0) continue;
    ++tried;
    auto s = GaussianSufficientStats::from_data(sample(sem, 100000, rng));
    const Node parent = sem.dag.parents(collider)[0];
    std::vector<Edge> t{make_edge(parent, collider)};
    auto wrong = sem.dag.with_reversed(t);
    if (bic(sem.dag, s) > bic(wrong, s)) ++improved;
  }
  EXPECT_GE(improved, 95);
}

TEST(GaussianMi, ZeroCorrelationGivesZero) {
  Eigen::MatrixXd x(4, 2);
  x << 1, 1, -1, 1, 1, -1, -1, -1;
  auto s = GaussianSufficientStats::from_data(x);
  EXPECT_EQ(gaussian_mi(s, 0, 1), 0.0);
}

TEST(GaussianMi, PerfectCorrelationIsClampedFinite) {
  Eigen::MatrixXd x(3, 2);
  x << 1, -2, 2, -4, 3, -6;
  auto s = GaussianSufficientStats::from_data(x);
  const double v = gaussian_mi(s, 0, 1);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(v, -0.5 * std::log(kCorrelationClamp), 1e-3);
}

TEST(GaussianMi, SymmetricNonnegativeMonotone) {
  auto s = GaussianSufficientStats::from_data(simulated(6, 300, 9));
  for (Node i = 0; i < 6; ++i)
    for (Node j = 0; j < 6; ++j)
      if (i != j) {
        EXPECT_EQ(gaussian_mi(s, i, j), gaussian_mi(s, j, i));
        EXPECT_GE(gaussian_mi(s, i, j), 0.0);
      }
  double prev = -1;
  for (double r : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    GaussianSufficientStats t;
    t.n = 10;
    t.cov = Eigen::Matrix2d{{1.0, r}, {r, 1.0}};
    const double v = gaussian_mi(t, 0, 1);
    EXPECT_GT(v, prev);
    EXPECT_NEAR(v, -0.5 * std::log(1 - r * r), 1e-12);
    t.cov(0, 1) = t.cov(1, 0) = -r;
    EXPECT_EQ(gaussian_mi(t, 0, 1), v);
    prev = v;
  }
}

TEST(GaussianMi, ZeroVarianceRaises) {
  Eigen::MatrixXd x(3, 2);
  x << 1, 5, 2, 5, 3, 5;
  auto s = GaussianSufficientStats::from_data(x, {"a", "flat"});
  try {
    gaussian_mi(s, 0, 1);
    FAIL() << "expected ZeroVariance";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVariance);
    EXPECT_NE(std::string(e.what()).find("flat"), std::string::npos);
  }
}

TEST(BinnedMi, IdenticalColumnsGiveBinnedEntropy) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(5000, 2);
  for (int r = 0; r < 5000; ++r) x(r, 0) = x(r, 1) = z(rng);
  // entropy of the 5-bin marginal, counted directly
  const double lo = x.col(0).minCoeff(), hi = x.col(0).maxCoeff();
  std::vector<double> c(5, 0);
  for (int r = 0; r < 5000; ++r) c[std::min(4, static_cast<int>((x(r, 0) - lo) / (hi - lo) * 5))] += 1;
  double h = 0;
  for (double v : c)
    if (v > 0) h -= v / 5000 * std::log(v / 5000);
  EXPECT_NEAR(binned_mi(x, 0, 1, 5), h, 1e-12);
  EXPECT_LE(binned_mi(x, 0, 1, 5), std::log(5.0) + 1e-12);
}

TEST(BinnedMi, IndependentUniformsNearZero) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u;
  Eigen::MatrixXd x(10000, 2);
  for (int r = 0; r < 10000; ++r) {
    x(r, 0) = u(rng);
    x(r, 1) = u(rng);
  }
  EXPECT_LT(binned_mi(x, 0, 1, 5), 0.01);
  EXPECT_GE(binned_mi(x, 0, 1, 5), 0.0);
}

TEST(BinnedMi, ConstantColumnGivesZero) {
  Eigen::MatrixXd x(6, 2);
  x << 1, 7, 2, 7, 3, 7, 4, 7, 5, 7, 6, 7;
  EXPECT_EQ(binned_mi(x, 0, 1, 4), 0.0);
  EXPECT_THROW(binned_mi(x, 0, 1, 1), Error);
}
