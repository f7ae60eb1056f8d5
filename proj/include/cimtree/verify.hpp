#pragma once

// Exhaustive cross-check suites over small graphs. Each suite walks sizes in
// increasing order and keeps the first mismatch as its counterexample.

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cimtree/edge_list_io.hpp"
#include "cimtree/enumerate.hpp"
#include "cimtree/moves.hpp"
#include "cimtree/polytope.hpp"

namespace cimtree {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t mismatches = 0;
  std::string counterexample;  // empty when everything matched

  bool passed() const { return mismatches == 0; }
};

namespace detail {

class SuiteRecorder {
 public:
  explicit SuiteRecorder(std::string name) { r_.name = std::move(name); }

  // returns `ok` so callers can stop early
  bool check(bool ok, const std::function<std::string()>& describe) {
    ++r_.checks;
    if (!ok) {
      if (r_.mismatches == 0) r_.counterexample = describe();
      ++r_.mismatches;
    }
    return ok;
  }

  SuiteResult done() && { return std::move(r_); }

 private:
  SuiteResult r_;
};

inline std::string edges_text(const UndirectedGraph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

inline std::string dag_text(const Dag& d) {
  std::ostringstream out;
  write_edge_list(out, d);
  return out.str();
}

inline std::string pair_text(const std::string& what, const UndirectedGraph& g, const Dag& a, const Dag& b) {
  return what + "\nskeleton:\n" + edges_text(g) + "first:\n" + dag_text(a) + "second:\n" + dag_text(b);
}

inline std::set<std::pair<std::size_t, std::size_t>> edge_pairs(const VertexSet& vs, int threads) {
  auto e = polytope_edges(vs, threads);
  return {e.begin(), e.end()};
}

inline bool is_move_pair(const Dag& a, const Dag& b) {
  auto add = classify_addition(a, b);
  if (add && std::holds_alternative<VStructureAddition>(*add)) return true;
  return classify_shift(a, b).has_value() || classify_split(a, b).has_value();
}

// LP edges of CIM_g against a predicate on representative pairs.
inline void compare_edges(SuiteRecorder& rec, const UndirectedGraph& g, int threads, const std::string& label,
                          const std::function<bool(const Dag&, const Dag&)>& predicted) {
  const auto vs = cim_vertices(g);
  const auto edges = edge_pairs(vs, threads);
  const auto& reps = vs.representatives();
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      const bool lp = edges.count({a, b}) > 0;
      const bool want = predicted(reps[a], reps[b]);
      rec.check(lp == want, [&] {
        return pair_text(label + ": LP edge " + (lp ? "yes" : "no") + ", predicted " + (want ? "yes" : "no"), g,
                         reps[a], reps[b]);
      });
    }
}

}  // namespace detail

// LP edges of CIM_G equal essential-flip pairs, the local table agrees with the
// definition on every (orientation, subtree), and every non-edge has a square
// witness; all trees with 3 <= p <= max_p.
inline SuiteResult verify_trees(int max_p, int threads = 1) {
  require(max_p <= 8, ErrorCode::CapExceeded, "trees suite needs max_p <= 8");
  detail::SuiteRecorder rec("trees");
  for (int p = 3; p <= max_p; ++p)
    for (const auto& t : nonisomorphic_trees(p)) {
      detail::compare_edges(rec, t, threads, "essential flip vs LP edge",
                            [](const Dag& a, const Dag& b) { return is_essential_flip(a, b).has_value(); });

      const auto vs = cim_vertices(t);
      const auto edges = detail::edge_pairs(vs, threads);
      for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
          if (edges.count({a, b})) continue;
          rec.check(square_nonedge_witness(vs, a, b).has_value(), [&] {
            return detail::pair_text("non-edge without square witness", t, vs.representatives()[a],
                                     vs.representatives()[b]);
          });
        }

      const auto subtrees = enumerate_subtrees(t);
      for (const auto& g : enumerate_acyclic_orientations(t))
        for (auto mask : subtrees.masks()) {
          const auto s = subtrees.edges_of(mask);
          const Dag h = g.with_reversed(s);
          const bool local = is_essential_flip_local(g, s);
          const bool def = is_essential_flip(g, h).has_value();
          rec.check(local == def, [&] {
            return detail::pair_text(std::string("local table ") + (local ? "accepts" : "rejects") +
                                         " but definition " + (def ? "accepts" : "rejects"),
                                     t, g, h);
          });
        }
    }
  return std::move(rec).done();
}

// Fibonacci vertex counts of CIM_{I_p}, edges = v-structure additions, shifts
// and splits, and the STAB(I_{p-2}) correspondence; 3 <= p <= max_p.
inline SuiteResult verify_paths(int max_p, int threads = 1) {
  require(max_p <= 8, ErrorCode::CapExceeded, "paths suite needs max_p <= 8");
  detail::SuiteRecorder rec("paths");
  std::size_t fa = 1, fb = 2;  // vertex counts for p = 2, 3
  for (int p = 3; p <= max_p; ++p) {
    const auto g = path_graph(p);
    const auto vs = cim_vertices(g);
    rec.check(vs.size() == fb, [&] {
      return "path p=" + std::to_string(p) + ": " + std::to_string(vs.size()) + " vertices, expected " +
             std::to_string(fb);
    });
    detail::compare_edges(rec, g, threads, "move pair vs LP edge", detail::is_move_pair);
    const auto c = path_correspondence(p);
    rec.check(c.vertices_match && c.edges_match,
              [&] { return "path p=" + std::to_string(p) + ": STAB correspondence fails"; });
    fa = std::exchange(fb, fa + fb);
  }
  return std::move(rec).done();
}

inline bool single_v_structure_pair(const Dag& a, const Dag& b) {
  return v_structures(a).size() == 1 && v_structures(b).size() == 1;
}

// V-structure addition, shift or split on the cycle 0-1-...-(p-1)-0 with
// indices taken mod p: the imsets differ exactly on triples {k-1, k, k+1}
// whose centers form a run of consecutive nodes (or the whole cycle) that
// alternates between the two DAGs. Unlike classify_shift/classify_split the
// spanned walk may close up on itself.
inline bool cyclic_move(const Dag& a, const Dag& b) {
  const int p = a.node_count();
  require(a.skeleton() == cycle_graph(p) && b.skeleton() == cycle_graph(p), ErrorCode::SkeletonMismatch,
          "cyclic_move needs DAGs on the cycle skeleton");
  const auto diff = imset_difference(a, b);
  std::vector<int> side(static_cast<std::size_t>(p), 0);  // +1 in b only, -1 in a only
  auto center = [&](SubsetKey s) -> int {
    const auto nodes = s.nodes();
    if (nodes.size() != 3) return -1;
    for (Node k : nodes)
      if (detail::contains(nodes, (k + p - 1) % p) && detail::contains(nodes, (k + 1) % p)) return k;
    return -1;
  };
  for (auto [list, sign] : {std::pair{&diff.plus, 1}, std::pair{&diff.minus, -1}})
    for (SubsetKey s : *list) {
      const int k = center(s);
      if (k < 0) return false;
      side[static_cast<std::size_t>(k)] = sign;
    }
  const auto count = std::count_if(side.begin(), side.end(), [](int x) { return x != 0; });
  if (count == 0) return false;
  // neighbors in the run alternate; one gap at most
  int gaps = 0;
  for (int k = 0; k < p; ++k) {
    const int x = side[static_cast<std::size_t>(k)], y = side[static_cast<std::size_t>((k + 1) % p)];
    if (x != 0 && y != 0 && x == y) return false;
    if (x != 0 && y == 0) ++gaps;
  }
  return gaps <= 1;
}

// CIM_{C_p}: edges = moves (mod p) plus pairs of single-v-structure classes, and the
// vertex bijection with nonempty stable sets of C_p; 4 <= p <= max_p.
inline SuiteResult verify_cycles(int max_p, int threads = 1) {
  require(max_p <= 8, ErrorCode::CapExceeded, "cycles suite needs max_p <= 8");
  detail::SuiteRecorder rec("cycles");
  for (int p = 4; p <= max_p; ++p) {
    const auto g = cycle_graph(p);
    detail::compare_edges(rec, g, threads, "move or single-v-structure pair vs LP edge",
                          [](const Dag& a, const Dag& b) {
                            return cyclic_move(a, b) || single_v_structure_pair(a, b);
                          });
    const auto c = cycle_correspondence(p);
    rec.check(c.vertices_match, [&] { return "cycle p=" + std::to_string(p) + ": STAB vertex bijection fails"; });
    if (p == 4)
      rec.check(c.cim_vertex_count == 6, [&] {
        return "cycle p=4: " + std::to_string(c.cim_vertex_count) + " vertices, expected 6";
      });
  }
  return std::move(rec).done();
}

// Stars with k leaves, the K2 u K2 star-like graph and K_p minus an edge are
// simplices of the predicted dimension.
inline SuiteResult verify_simplices(int max_p) {
  detail::SuiteRecorder rec("simplices");
  auto expect = [&](const std::string& name, const UndirectedGraph& g, std::size_t dim, std::size_t vertices) {
    const auto vs = cim_vertices(g);
    const auto d = affine_dimension(vs);
    rec.check(verify_simplex(vs) && d == dim && vs.size() == vertices, [&] {
      return name + ": " + std::to_string(vs.size()) + " vertices, dimension " + std::to_string(d) + ", expected " +
             std::to_string(vertices) + " vertices, dimension " + std::to_string(dim);
    });
  };
  for (int k = 2; k <= 4 && k + 1 <= max_p; ++k) {
    const std::size_t dim = (std::size_t{1} << k) - static_cast<std::size_t>(k) - 1;
    expect("star with " + std::to_string(k) + " leaves", star_graph(k), dim, dim + 1);
  }
  if (max_p >= 5) expect("star-like K2 u K2", star_like_graph({2, 2}), 9, 10);
  for (int p = 4; p <= 5 && p <= max_p; ++p) {
    const std::size_t dim = (std::size_t{1} << (p - 2)) - 1;
    expect("K" + std::to_string(p) + " minus an edge", complete_minus_edge(p), dim, dim + 1);
  }
  return std::move(rec).done();
}

// Chvatal adjacency against the LP edge oracle on STAB(g) for every graph with
// p <= max_graph_p, and stable_face_verify on every tree with p <= max_tree_p.
inline SuiteResult verify_stab(int max_graph_p, int max_tree_p, int threads = 1) {
  require(max_graph_p <= 6, ErrorCode::CapExceeded, "stab suite needs graphs with p <= 6");
  require(max_tree_p <= 8, ErrorCode::CapExceeded, "stab suite needs trees with p <= 8");
  detail::SuiteRecorder rec("stab");
  for (int p = 1; p <= max_graph_p; ++p)
    for (const auto& g : nonisomorphic_graphs(p)) {
      const auto sets = stable_sets(g);
      const auto vs = stab_vertices(g);
      const auto edges = detail::edge_pairs(vs, threads);
      for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = a + 1; b < sets.size(); ++b) {
          const auto ia = vs.index_of(incidence_vector(p, sets[a]));
          const auto ib = vs.index_of(incidence_vector(p, sets[b]));
          const bool lp = edges.count({std::min(ia, ib), std::max(ia, ib)}) > 0;
          const bool chv = chvatal_is_edge(g, sets[a], sets[b]);
          rec.check(lp == chv, [&] {
            return "STAB: Chvatal " + std::string(chv ? "yes" : "no") + ", LP " + (lp ? "yes" : "no") +
                   "\ngraph:\n" + detail::edges_text(g) + "sets: " + detail::join_nodes(sets[a]) + " / " +
                   detail::join_nodes(sets[b]);
          });
        }
    }
  for (int p = 2; p <= max_tree_p; ++p)
    for (const auto& t : nonisomorphic_trees(p)) {
      const auto r = stable_face_report(t);
      rec.check(r.ok, [&] {
        return "stable face: " + std::to_string(r.face_vertex_count) + " face vertices, " +
               std::to_string(r.stab_vertex_count) + " stable sets\ntree:\n" + detail::edges_text(t);
      });
    }
  return std::move(rec).done();
}

// Shifts and splits are essential flips (trees, p <= max_p) and turn pairs turn
// into single-arc reversals that pass reversal_conclusions_hold (trees, p <= min(max_p, 5)).
inline SuiteResult verify_moves(int max_p) {
  require(max_p <= 7, ErrorCode::CapExceeded, "moves suite needs max_p <= 7");
  detail::SuiteRecorder rec("moves");
  for (int p = 3; p <= max_p; ++p)
    for (const auto& t : nonisomorphic_trees(p)) {
      const auto all = enumerate_acyclic_orientations(t);
      for (const auto& a : all)
        for (const auto& b : all) {
          if (classify_shift(a, b) || classify_split(a, b))
            rec.check(is_essential_flip(a, b).has_value(),
                      [&] { return detail::pair_text("shift/split that is not an essential flip", t, a, b); });
          if (p > 5 || !is_turn_pair(a, b)) continue;
          bool ok = true;
          try {
            const auto r = turn_pair_as_reversal(a, b);
            ok = detail::reversal_conclusions_hold(r.dag, r.arc, a, b);
          } catch (const Error&) {
            ok = false;
          }
          rec.check(ok, [&] { return detail::pair_text("turn pair without a valid reversal", t, a, b); });
        }
    }
  return std::move(rec).done();
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"trees", "paths", "cycles", "simplices", "stab", "moves"};
  return names;
}

// `suite` is one of suite_names() or "all"; max_p is clamped to each suite's cap.
inline std::vector<SuiteResult> run_suites(const std::string& suite, int max_p, int threads = 1) {
  require(suite == "all" || std::count(suite_names().begin(), suite_names().end(), suite), ErrorCode::InvalidArgument,
          "unknown suite " + suite);
  require(max_p >= 3, ErrorCode::TooSmall, "max_p must be at least 3");
  std::vector<SuiteResult> out;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("trees")) out.push_back(verify_trees(std::min(max_p, 8), threads));
  if (want("paths")) out.push_back(verify_paths(std::min(max_p, 8), threads));
  if (want("cycles")) out.push_back(verify_cycles(std::min(max_p, 6), threads));
  if (want("simplices")) out.push_back(verify_simplices(max_p));
  if (want("stab")) out.push_back(verify_stab(std::min(max_p, 5), std::min(max_p, 8), threads));
  if (want("moves")) out.push_back(verify_moves(std::min(max_p, 7)));
  return out;
}

}  // namespace cimtree
