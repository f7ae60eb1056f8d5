#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cimtree/edge_list_io.hpp"
#include "cimtree/enumerate.hpp"
#include "cimtree/graph.hpp"
#include "fixtures.hpp"

using namespace cimtree;
using fixtures::d;
using fixtures::n;

TEST(Skeleton, ChainErasesOrientation) {
  Dag dag(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(skeleton(dag), UndirectedGraph(3, {{0, 1}, {1, 2}}));
}

TEST(Skeleton, EmptyDag) {
  auto g = skeleton(Dag(3));
  EXPECT_EQ(g.node_count(), 3);
  EXPECT_EQ(g.edge_count(), 0U);
}

TEST(Skeleton, FlipExampleIsA19NodeTree) {
  auto ex = fixtures::flip_example();
  auto g = skeleton(ex.g);
  EXPECT_EQ(g.node_count(), 19);
  EXPECT_TRUE(g.is_tree());
  EXPECT_EQ(g, skeleton(ex.h));
  EXPECT_EQ(g, skeleton(ex.dd));
}

TEST(Skeleton, ReverseAllKeepsSkeleton) {
  for (int p = 2; p <= 6; ++p)
    for (const auto& t : nonisomorphic_trees(p))
      for (const auto& dag : fixtures::tree_orientations(t)) EXPECT_EQ(skeleton(dag.reversed_all()), skeleton(dag));
}

TEST(Dag, RejectsCycle) {
  try {
    Dag(3, {{0, 1}, {1, 2}, {2, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CycleDetected);
  }
}

TEST(Dag, RejectsAntiparallelArcs) { EXPECT_THROW(Dag(2, {{0, 1}, {1, 0}}), Error); }

TEST(VStructures, SimpleCollider) {
  auto vs = v_structures(Dag(3, {{0, 1}, {2, 1}}));
  ASSERT_EQ(vs.size(), 1U);
  EXPECT_EQ(vs[0], (VStructure{0, 1, 2}));
}

TEST(VStructures, ShieldedColliderExcluded) {
  EXPECT_TRUE(v_structures(Dag(3, {{0, 1}, {2, 1}, {0, 2}})).empty());
}

TEST(VStructures, FlipExampleColliders) {
  auto ex = fixtures::flip_example();
  std::set<int> centers;
  for (const auto& v : v_structures(ex.g)) centers.insert(v.collider);
  // read off the drawn arcs: delta2 has parents delta3 and n4
  EXPECT_EQ(centers, (std::set<int>{d(1), d(2), d(4), d(6), d(7), n(9)}));
  std::set<std::tuple<int, int, int>> mine;
  for (const auto& v : v_structures(ex.g)) mine.insert({v.left, v.collider, v.right});
  EXPECT_EQ(mine, fixtures::oracle_colliders(ex.g));
}

TEST(MarkovEquivalence, Examples) {
  EXPECT_TRUE(is_markov_equivalent(Dag(3, {{0, 1}, {1, 2}}), Dag(3, {{1, 0}, {2, 1}})));
  EXPECT_FALSE(is_markov_equivalent(Dag(3, {{0, 1}, {1, 2}}), Dag(3, {{0, 1}, {2, 1}})));
  EXPECT_THROW(is_markov_equivalent(Dag(2), Dag(3)), Error);
}

TEST(MarkovEquivalence, StarWithThreeLeavesHasFiveClasses) {
  auto orients = all_acyclic_orientations(star_graph(3));
  ASSERT_EQ(orients.size(), 8U);
  std::set<std::set<std::vector<int>>> classes;
  for (const auto& o : orients) classes.insert(fixtures::oracle_truncated_imset(o));
  EXPECT_EQ(classes.size(), 5U);
  for (const auto& a : orients)
    for (const auto& b : orients)
      EXPECT_EQ(is_markov_equivalent(a, b), fixtures::oracle_truncated_imset(a) == fixtures::oracle_truncated_imset(b));
}

TEST(MarkovEquivalence, EquivalenceRelationOnTrees) {
  for (int p = 2; p <= 6; ++p) {
    for (const auto& t : nonisomorphic_trees(p)) {
      auto all = fixtures::tree_orientations(t);
      for (const auto& a : all) {
        EXPECT_TRUE(is_markov_equivalent(a, a));
        for (const auto& b : all) {
          bool ab = is_markov_equivalent(a, b);
          EXPECT_EQ(ab, is_markov_equivalent(b, a));
          EXPECT_EQ(ab, fixtures::oracle_colliders(a) == fixtures::oracle_colliders(b));
        }
      }
    }
  }
}

TEST(Reachability, Chain) {
  Dag chain(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(ancestors(chain, 2), (NodeSet{0, 1}));
  EXPECT_EQ(descendants(chain, 0), (NodeSet{1, 2}));
  EXPECT_TRUE(ancestors(chain, 0).empty());
}

TEST(Reachability, Arcless) {
  Dag none(4);
  for (int i = 0; i < 4; ++i) {
    EXPECT_TRUE(ancestors(none, i).empty());
    EXPECT_TRUE(descendants(none, i).empty());
  }
}

TEST(Reachability, FlipExampleDirectedPath) {
  auto ex = fixtures::flip_example();
  auto de = descendants(ex.g, d(3));
  EXPECT_TRUE(std::binary_search(de.begin(), de.end(), d(6)));
}

TEST(EssentialGraph, ChainIsUndirected) {
  auto e = essential_graph_forest(Dag(3, {{0, 1}, {1, 2}}));
  EXPECT_TRUE(e.directed().empty());
  EXPECT_EQ(e.undirected().size(), 2U);
}

TEST(EssentialGraph, ColliderDirected) {
  auto e = essential_graph_forest(Dag(3, {{0, 1}, {2, 1}}));
  EXPECT_EQ(e.directed(), (std::vector<Arc>{{0, 1}, {2, 1}}));
  EXPECT_TRUE(e.undirected().empty());
}

TEST(EssentialGraph, ChildOfColliderDirected) {
  Dag dag(4, {{0, 1}, {2, 1}, {1, 3}});
  auto e = essential_graph_forest(dag);
  EXPECT_EQ(e.directed().size(), 3U);
  EXPECT_EQ(mec_members(dag).size(), 1U);
  EXPECT_EQ(e, essential_graph_bruteforce(dag));
}

TEST(EssentialGraph, RejectsCyclicSkeleton) {
  try {
    essential_graph_forest(Dag(3, {{0, 1}, {1, 2}, {0, 2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonForestSkeleton);
  }
}

// The forest rule (collider nodes protect their own outgoing arcs) against
// intersection over the whole equivalence class.
TEST(EssentialGraph, ForestRuleMatchesBruteForceOnTrees) {
  for (int p = 2; p <= 6; ++p) {
    for (const auto& t : nonisomorphic_trees(p)) {
      for (const auto& dag : fixtures::tree_orientations(t)) {
        auto fast = essential_graph_forest(dag);
        ASSERT_EQ(fast, essential_graph_bruteforce(dag)) << format_edge_list(dag);
      }
    }
  }
}

TEST(EssentialGraph, ForestRuleOnForests) {
  UndirectedGraph forest(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  for (const auto& dag : all_acyclic_orientations(forest))
    EXPECT_EQ(essential_graph_forest(dag), essential_graph_bruteforce(dag));
}

TEST(EssentialGraph, ArrowsAtANode) {
  for (int p = 3; p <= 6; ++p) {
    for (const auto& t : nonisomorphic_trees(p)) {
      for (const auto& dag : fixtures::tree_orientations(t)) {
        auto e = essential_graph_forest(dag);
        for (const auto& a : e.directed())
          for (Node k : t.neighbors(a.to)) EXPECT_TRUE(e.is_directed(make_edge(a.to, k)));
      }
    }
  }
}

TEST(EssentialGraph, ConstantOnClasses) {
  for (int p = 3; p <= 6; ++p) {
    for (const auto& t : nonisomorphic_trees(p)) {
      auto all = fixtures::tree_orientations(t);
      std::map<std::set<std::tuple<int, int, int>>, PartiallyDirectedGraph> seen;
      for (const auto& dag : all) {
        auto key = fixtures::oracle_colliders(dag);
        auto e = essential_graph_forest(dag);
        auto [it, fresh] = seen.emplace(key, e);
        if (!fresh) EXPECT_EQ(it->second, e);
      }
    }
  }
}

TEST(Orientations, Counts) {
  EXPECT_EQ(all_acyclic_orientations(complete_graph(3)).size(), 6U);
  EXPECT_EQ(all_acyclic_orientations(UndirectedGraph(2, {{0, 1}})).size(), 2U);
  EXPECT_EQ(all_acyclic_orientations(path_graph(4)).size(), 8U);
  // K4 has 4! = 24 acyclic orientations
  EXPECT_EQ(all_acyclic_orientations(complete_graph(4)).size(), 24U);
}

TEST(Orientations, DistinctAndAcyclic) {
  auto all = all_acyclic_orientations(cycle_graph(5));
  EXPECT_EQ(all.size(), 30U);  // 2^5 minus the two directed cycles
  std::set<std::vector<Arc>> distinct;
  for (const auto& o : all) distinct.insert(o.arcs());
  EXPECT_EQ(distinct.size(), all.size());
}

TEST(Orientations, Cap) {
  try {
    enumerate_acyclic_orientations(complete_graph(7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
}

TEST(Prufer, Examples) {
  EXPECT_EQ(prufer_decode({1}), UndirectedGraph(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(prufer_decode({0, 0}), UndirectedGraph(4, {{0, 1}, {0, 2}, {0, 3}}));
  EXPECT_EQ(prufer_decode({}, 2), UndirectedGraph(2, {{0, 1}}));
}

TEST(Prufer, Errors) {
  try {
    prufer_decode({0, 1}, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadLength);
  }
  try {
    prufer_decode({4}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LabelOutOfRange);
  }
}

TEST(Prufer, InverseOfEncode) {
  for (int p = 2; p <= 7; ++p) {
    std::vector<Node> seq(static_cast<std::size_t>(p - 2), 0);
    std::set<std::vector<Edge>> trees;
    while (true) {
      auto t = prufer_decode(seq, p);
      ASSERT_TRUE(t.is_tree());
      EXPECT_EQ(prufer_encode(t), seq);
      trees.insert(t.edges());
      std::size_t k = seq.size();
      while (k > 0 && seq[k - 1] == p - 1) seq[--k] = 0;
      if (k == 0) break;
      ++seq[k - 1];
    }
    std::size_t cayley = 1;
    for (int i = 0; i < p - 2; ++i) cayley *= static_cast<std::size_t>(p);
    EXPECT_EQ(trees.size(), cayley);
  }
}

TEST(Catalog, TreeAndGraphCounts) {
  std::vector<std::size_t> trees = {1, 1, 1, 2, 3, 6, 11, 23};
  for (int p = 1; p <= 8; ++p) EXPECT_EQ(nonisomorphic_trees(p).size(), trees[p - 1]) << p;
  std::vector<std::size_t> graphs = {1, 2, 4, 11, 34};
  for (int p = 1; p <= 5; ++p) EXPECT_EQ(nonisomorphic_graphs(p).size(), graphs[p - 1]) << p;
}

TEST(Span, Examples) {
  auto path = path_graph(4);
  EXPECT_EQ(span_subtree(path, {0, 3}).size(), 3U);
  EXPECT_TRUE(span_subtree(path, {2}).empty());
  try {
    span_subtree(path, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySet);
  }
  try {
    span_subtree(cycle_graph(4), {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotATree);
  }
}

TEST(Span, FlipExampleContainsN3) {
  auto ex = fixtures::flip_example();
  NodeSet delta = {d(1), d(2), d(3), d(4), d(5), d(6), d(7)};
  auto nodes = span_nodes(skeleton(ex.g), delta);
  NodeSet expect = delta;
  detail::insert_sorted(expect, n(3));
  EXPECT_EQ(nodes, expect);
  EXPECT_EQ(span_subtree(skeleton(ex.g), delta).size(), 7U);
}

TEST(Span, MatchesPairwisePaths) {
  for (const auto& t : nonisomorphic_trees(6)) {
    for (std::uint64_t m = 1; m < 64; ++m) {
      NodeSet dset;
      for (int i = 0; i < 6; ++i)
        if ((m >> i) & 1U) dset.push_back(i);
      std::set<Edge> expect;
      for (Node a : dset) {
        for (Node b : dset) {
          auto path = forest_path(t, a, b);
          for (std::size_t k = 0; k + 1 < path.size(); ++k) expect.insert(make_edge(path[k], path[k + 1]));
        }
      }
      auto got = span_subtree(t, dset);
      EXPECT_EQ(std::set<Edge>(got.begin(), got.end()), expect);
    }
  }
}

TEST(EdgeListIo, RoundTrip) {
  PartiallyDirectedGraph g(4, {{0, 1}, {2, 1}}, {{1, 3}});
  auto text = format_edge_list(g);
  EXPECT_EQ(text, "p=4\n0 -> 1\n2 -> 1\n1 -- 3\n");
  EXPECT_EQ(parse_edge_list(text), g);
  EXPECT_EQ(parse_edge_list("# comment\np=3\n\n0 -- 1  # trailing\n2 -> 1\n"),
            PartiallyDirectedGraph(3, {{2, 1}}, {{0, 1}}));
}

TEST(EdgeListIo, Errors) {
  EXPECT_THROW(parse_edge_list(""), Error);
  EXPECT_THROW(parse_edge_list("0 -- 1\n"), Error);
  EXPECT_THROW(parse_edge_list("p=2\n0 -- 5\n"), Error);
  EXPECT_THROW(parse_edge_list("p=2\n0 ~ 1\n"), Error);
  EXPECT_THROW(parse_edge_list("p=2\n0 -- 1\n1 -> 0\n"), Error);
}
