#pragma once

// Moves between Markov equivalence classes: additions, shifts, splits, turn
// pairs and essential flips, plus subtree enumeration for the flip search.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cimtree/error.hpp"
#include "cimtree/graph.hpp"
#include "cimtree/imset.hpp"

namespace cimtree {

inline constexpr std::size_t kDefaultSubtreeCap = 24;

struct EdgeAddition {
  SubsetKey s_star;
  bool second_larger = true;  // c_b = c_a + e_S*
  friend bool operator==(const EdgeAddition&, const EdgeAddition&) = default;
};

struct VStructureAddition {
  SubsetKey s_star;
  bool second_larger = true;
  friend bool operator==(const VStructureAddition&, const VStructureAddition&) = default;
};

// For shifts and splits, `swapped` is false when the identity holds with
// G = first argument and H = second along `path` (H carries the odd triples).
struct Shift {
  std::vector<Node> path;
  bool swapped = false;
  friend bool operator==(const Shift&, const Shift&) = default;
};

struct Split {
  std::vector<Node> path;
  bool swapped = false;
  friend bool operator==(const Split&, const Split&) = default;
};

// `swapped` is false when c_b = c_a + sum S+ - sum S-.
struct TurnPair {
  Node i = 0;
  Node j = 0;
  NodeSet s_i;
  NodeSet s_j;
  bool swapped = false;
  friend bool operator==(const TurnPair&, const TurnPair&) = default;
};

struct EssentialFlip {
  std::vector<Edge> subtree;
  friend bool operator==(const EssentialFlip&, const EssentialFlip&) = default;
};

using MoveDescriptor = std::variant<EdgeAddition, VStructureAddition, Shift, Split, TurnPair, EssentialFlip>;

inline std::string move_kind(const MoveDescriptor& m) {
  static const char* names[] = {"EdgeAddition", "VStructureAddition", "Shift", "Split", "TurnPair", "EssentialFlip"};
  return names[m.index()];
}

namespace detail {

inline std::string join_nodes(const std::vector<Node>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(v[k]);
  }
  return s;
}

}  // namespace detail

// One-line text record: kind followed by its witness.
inline std::string describe(const MoveDescriptor& m) {
  std::ostringstream out;
  out << "kind=" << move_kind(m);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EdgeAddition> || std::is_same_v<T, VStructureAddition>) {
          out << " S*=" << to_string(x.s_star) << " larger=" << (x.second_larger ? "second" : "first");
        } else if constexpr (std::is_same_v<T, Shift> || std::is_same_v<T, Split>) {
          out << " path=" << detail::join_nodes(x.path) << " swapped=" << (x.swapped ? 1 : 0);
        } else if constexpr (std::is_same_v<T, TurnPair>) {
          out << " i=" << x.i << " j=" << x.j << " S_i={" << detail::join_nodes(x.s_i) << "} S_j={"
              << detail::join_nodes(x.s_j) << "} swapped=" << (x.swapped ? 1 : 0);
        } else {
          out << " T=";
          for (std::size_t k = 0; k < x.subtree.size(); ++k) out << (k ? "," : "") << to_string(x.subtree[k]);
        }
      },
      m);
  return out.str();
}

// Coordinates where two DAG imsets differ (full imsets, computed locally:
// only nodes whose parent sets changed can witness a changed coordinate).
struct ImsetDifference {
  std::vector<SubsetKey> plus;   // 1 in b, 0 in a
  std::vector<SubsetKey> minus;  // 1 in a, 0 in b
  bool empty() const { return plus.empty() && minus.empty(); }
  std::size_t size() const { return plus.size() + minus.size(); }
};

namespace detail {

inline void push_family(std::vector<std::uint64_t>& out, Node i, std::uint64_t parents) {
  require(std::popcount(parents) <= 20, ErrorCode::CapExceeded, "parent set too large for imset difference");
  const std::uint64_t self = std::uint64_t{1} << i;
  // all nonempty submasks of parents
  for (std::uint64_t sub = parents; sub; sub = (sub - 1) & parents) out.push_back(self | sub);
}

}  // namespace detail

inline ImsetDifference imset_difference(const Dag& a, const Dag& b) {
  require(a.node_count() == b.node_count(), ErrorCode::DimensionMismatch, "node counts differ");
  require(a.node_count() <= 64, ErrorCode::CapExceeded, "at most 64 nodes");
  auto pa = detail::parent_masks(a);
  auto pb = detail::parent_masks(b);
  std::vector<std::uint64_t> cand;
  for (Node i = 0; i < a.node_count(); ++i) {
    if (pa[i] == pb[i]) continue;
    detail::push_family(cand, i, pa[i]);
    detail::push_family(cand, i, pb[i]);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  ImsetDifference out;
  for (auto s : cand) {
    bool va = detail::imset_value(pa, s), vb = detail::imset_value(pb, s);
    if (vb && !va) out.plus.emplace_back(s);
    if (va && !vb) out.minus.emplace_back(s);
  }
  std::sort(out.plus.begin(), out.plus.end());
  std::sort(out.minus.begin(), out.minus.end());
  return out;
}

// Addition: imsets at Hamming distance one.
inline std::optional<MoveDescriptor> classify_addition(const Dag& a, const Dag& b) {
  auto diff = imset_difference(a, b);
  if (diff.size() != 1) return std::nullopt;
  bool second_larger = diff.minus.empty();
  SubsetKey s = second_larger ? diff.plus[0] : diff.minus[0];
  if (s.size() == 2) return EdgeAddition{s, second_larger};
  if (s.size() == 3) return VStructureAddition{s, second_larger};
  return std::nullopt;  // impossible for DAG imsets
}

namespace detail {

inline SubsetKey triple(Node x, Node y, Node z) { return SubsetKey::of({x, y, z}); }

// Simple paths of the given node count such that the triple centered at
// position j lies in `odd` for odd j and in `even` for even j, covering both
// sets exactly.
inline std::optional<std::vector<Node>> find_alternating_path(const UndirectedGraph& g, std::size_t nodes,
                                                              const std::vector<SubsetKey>& odd,
                                                              const std::vector<SubsetKey>& even) {
  if (nodes < 3) return std::nullopt;
  std::vector<Node> path;
  std::vector<char> used(static_cast<std::size_t>(g.node_count()), 0);
  auto in = [](const std::vector<SubsetKey>& v, SubsetKey s) { return std::binary_search(v.begin(), v.end(), s); };
  std::function<bool()> grow = [&]() -> bool {
    if (path.size() == nodes) {
      // the triples along the path must be exactly the two sets
      std::vector<SubsetKey> o, e;
      for (std::size_t j = 1; j + 1 < nodes; ++j) (j % 2 ? o : e).push_back(triple(path[j - 1], path[j], path[j + 1]));
      std::sort(o.begin(), o.end());
      std::sort(e.begin(), e.end());
      return o == odd && e == even;
    }
    Node last = path.back();
    for (Node y : g.neighbors(last)) {
      if (used[y]) continue;
      if (path.size() >= 2) {
        std::size_t j = path.size() - 1;  // center of the new triple
        auto t = triple(path[j - 1], path[j], y);
        if (!in(j % 2 ? odd : even, t)) continue;
      }
      used[y] = 1;
      path.push_back(y);
      if (grow()) return true;
      path.pop_back();
      used[y] = 0;
    }
    return false;
  };
  for (Node s = 0; s < g.node_count(); ++s) {
    path = {s};
    used.assign(used.size(), 0);
    used[s] = 1;
    if (grow()) return path;
  }
  return std::nullopt;
}

// Shared by shift and split: the difference must consist of triples only,
// H-side (plus) on odd centers and G-side (minus) on even centers.
inline std::optional<std::vector<Node>> path_move(const UndirectedGraph& g, const ImsetDifference& diff, bool shift) {
  const std::size_t t = diff.size();
  if (t == 0) return std::nullopt;
  for (auto s : diff.plus)
    if (s.size() != 3) return std::nullopt;
  for (auto s : diff.minus)
    if (s.size() != 3) return std::nullopt;
  // shift: m odd and m even triples; split: m odd and m-1 even
  if (shift && (diff.plus.size() != diff.minus.size())) return std::nullopt;
  if (!shift && diff.plus.size() != diff.minus.size() + 1) return std::nullopt;
  return find_alternating_path(g, t + 2, diff.plus, diff.minus);
}

template <class Move>
std::optional<MoveDescriptor> classify_path_move(const Dag& a, const Dag& b, bool shift) {
  if (a.node_count() != b.node_count()) return std::nullopt;
  const auto g = a.skeleton();
  if (!(g == b.skeleton())) return std::nullopt;
  auto diff = imset_difference(a, b);
  for (bool swapped : {false, true}) {
    ImsetDifference d = diff;
    if (swapped) std::swap(d.plus, d.minus);
    auto path = path_move(g, d, shift);
    if (!path) continue;
    bool sw = swapped;
    if (path->front() > path->back()) {
      std::reverse(path->begin(), path->end());
      // reversing a shift path exchanges the odd and even triples
      if (shift) sw = !sw;
    }
    return Move{*path, sw};
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<MoveDescriptor> classify_shift(const Dag& a, const Dag& b) {
  return detail::classify_path_move<Shift>(a, b, true);
}

inline std::optional<MoveDescriptor> classify_split(const Dag& a, const Dag& b) {
  return detail::classify_path_move<Split>(a, b, false);
}

namespace detail {

inline std::uint64_t set_mask(const NodeSet& s) {
  std::uint64_t m = 0;
  for (Node x : s) m |= std::uint64_t{1} << x;
  return m;
}

// Conditions (2)/(3): c_G(S + {i}) = 1 for every nonempty S within s_i.
inline bool closed_under_subsets(const std::vector<std::uint64_t>& pa, Node i, std::uint64_t s_i) {
  const std::uint64_t self = std::uint64_t{1} << i;
  for (std::uint64_t sub = s_i; sub; sub = (sub - 1) & s_i)
    if (!imset_value(pa, self | sub)) return false;
  return true;
}

inline std::vector<std::uint64_t> submasks_of(const NodeSet& base) {
  std::vector<std::uint64_t> out;
  const std::uint64_t all = set_mask(base);
  for (std::uint64_t sub = all;; sub = (sub - 1) & all) {
    out.push_back(sub);
    if (sub == 0) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline NodeSet mask_nodes(std::uint64_t m) { return SubsetKey(m).nodes(); }

// Turn pair from G to H given the G-to-H imset difference.
inline std::optional<TurnPair> find_turn_pair(const Dag& gdag, const UndirectedGraph& g, const ImsetDifference& diff) {
  if (diff.empty()) return std::nullopt;
  auto pa = parent_masks(gdag);
  std::map<std::uint64_t, int> actual;
  for (auto s : diff.plus) actual[s.mask()] = 1;
  for (auto s : diff.minus) actual[s.mask()] = -1;
  std::uint64_t common = ~std::uint64_t{0};
  for (const auto& [m, v] : actual) common &= m;
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(g.node_count()), 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= std::uint64_t{1} << e.v;
    nbr[e.v] |= std::uint64_t{1} << e.u;
  }
  for (Node i = 0; i < g.node_count(); ++i) {
    if (!((common >> i) & 1U)) continue;
    for (Node j : g.neighbors(i)) {
      if (!((common >> j) & 1U)) continue;
      NodeSet base_i, base_j;
      for (Node x : g.neighbors(i))
        if (x != j) base_i.push_back(x);
      for (Node x : g.neighbors(j))
        if (x != i) base_j.push_back(x);
      require(base_i.size() <= 16 && base_j.size() <= 16, ErrorCode::CapExceeded, "degree too large for turn pair search");
      const std::uint64_t ij = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
      for (auto si : submasks_of(base_i)) {
        if (!closed_under_subsets(pa, i, si)) continue;
        for (auto sj : submasks_of(base_j)) {
          if (!closed_under_subsets(pa, j, sj)) continue;
          bool cond4 = (si & ~nbr[j]) != 0 || (sj & ~nbr[i]) != 0;
          if (!cond4) continue;
          std::map<std::uint64_t, int> expect;
          for (std::uint64_t t = si;; t = (t - 1) & si) {
            if ((t & ~nbr[j]) != 0) expect[t | ij] += 1;
            if (t == 0) break;
          }
          for (std::uint64_t t = sj;; t = (t - 1) & sj) {
            if ((t & ~nbr[i]) != 0) expect[t | ij] -= 1;
            if (t == 0) break;
          }
          std::erase_if(expect, [](const auto& kv) { return kv.second == 0; });
          if (expect == actual) return TurnPair{i, j, mask_nodes(si), mask_nodes(sj), false};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<MoveDescriptor> is_turn_pair(const Dag& a, const Dag& b) {
  if (a.node_count() != b.node_count()) return std::nullopt;
  const auto g = a.skeleton();
  if (!(g == b.skeleton())) return std::nullopt;
  auto diff = imset_difference(a, b);
  if (auto tp = detail::find_turn_pair(a, g, diff)) return *tp;
  std::swap(diff.plus, diff.minus);
  if (auto tp = detail::find_turn_pair(b, g, diff)) {
    tp->swapped = true;
    return *tp;
  }
  return std::nullopt;
}

namespace detail {

// Nodes on the `u` side of the tree after deleting edge u--v.
inline std::vector<char> side_of(const UndirectedGraph& g, Node u, Node v) {
  std::vector<char> mark(static_cast<std::size_t>(g.node_count()), 0);
  std::vector<Node> stack{u};
  mark[u] = 1;
  while (!stack.empty()) {
    Node x = stack.back();
    stack.pop_back();
    for (Node y : g.neighbors(x)) {
      if (mark[y] || (x == u && y == v)) continue;
      mark[y] = 1;
      stack.push_back(y);
    }
  }
  return mark;
}

// Orientation with the u side taken from `near`, the rest from `far`, and u -> v.
inline Dag splice(const Dag& near, const Dag& far, Node u, Node v) {
  const auto g = near.skeleton();
  auto side = side_of(g, u, v);
  std::vector<Arc> arcs;
  for (const auto& e : g.edges()) {
    if (make_edge(u, v) == e) {
      arcs.push_back(Arc{u, v});
      continue;
    }
    const Dag& src = side[e.u] ? near : far;
    arcs.push_back(src.has_arc(e.u, e.v) ? Arc{e.u, e.v} : Arc{e.v, e.u});
  }
  return Dag(g.node_count(), std::move(arcs));
}

inline bool reversal_conclusions_hold(const Dag& dd, Arc arc, const Dag& a, const Dag& b) {
  if (!dd.has_arc(arc.from, arc.to)) return false;
  if (!is_markov_equivalent(dd, a)) return false;
  Edge e = make_edge(arc.from, arc.to);
  try {
    auto rev = dd.with_reversed(std::span<const Edge>(&e, 1));
    return is_markov_equivalent(rev, b);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace detail

struct TurnReversal {
  Dag dag;
  Arc arc;
};

// A DAG D equivalent to a with an arc whose reversal lands in the class of b.
inline TurnReversal turn_pair_as_reversal(const Dag& a, const Dag& b) {
  auto tp = is_turn_pair(a, b);
  if (!tp) fail(ErrorCode::NotATurnPair, "the pair is not a turn pair");
  const auto g = a.skeleton();
  require(g.is_tree(), ErrorCode::NotATree, "turn_pair_as_reversal needs a tree skeleton");

  std::vector<std::pair<Dag, Arc>> candidates;
  // Single v-structure difference: splice at the collider as in the
  // constructive argument (collider side from the graph that has it).
  auto diff = imset_difference(a, b);
  if (diff.size() == 1 && (diff.plus.size() == 1 ? diff.plus[0] : diff.minus[0]).size() == 3) {
    bool in_b = diff.plus.size() == 1;
    const Dag& with = in_b ? b : a;
    const Dag& without = in_b ? a : b;
    auto s = (in_b ? diff.plus[0] : diff.minus[0]).nodes();
    for (Node beta : s) {
      const auto& pa = with.parents(beta);
      if (pa.size() < 2) continue;
      for (Node gamma : s) {
        if (gamma == beta || !without.has_arc(beta, gamma)) continue;
        Dag dd = detail::splice(with, without, beta, gamma);  // equivalent to `without`
        if (in_b) {
          candidates.emplace_back(dd, Arc{beta, gamma});
        } else {
          Edge e = make_edge(beta, gamma);
          candidates.emplace_back(dd.with_reversed(std::span<const Edge>(&e, 1)), Arc{gamma, beta});
        }
      }
    }
  }
  for (const auto& arc : a.arcs()) candidates.emplace_back(a, arc);
  for (const auto& e : g.edges()) {
    for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      candidates.emplace_back(detail::splice(b, a, u, v), Arc{u, v});
    }
  }
  for (const auto& [dd, arc] : candidates)
    if (detail::reversal_conclusions_hold(dd, arc, a, b)) return {dd, arc};
  fail(ErrorCode::NotATurnPair, "no single-arc reversal realizes this turn pair");
}

namespace detail {

inline void require_common_forest(const Dag& a, const Dag& b) {
  require(a.node_count() == b.node_count(), ErrorCode::DimensionMismatch, "node counts differ");
  require(a.skeleton() == b.skeleton(), ErrorCode::SkeletonMismatch, "DAGs have different skeletons");
}

inline bool has_essential_parent(const PartiallyDirectedGraph& e, const Dag& d, Node x) {
  for (Node y : d.parents(x))
    if (e.has_arc(y, x)) return true;
  return false;
}

}  // namespace detail

// Essential flip by definition: the essential graphs are fully directed and
// oppositely oriented on span(Delta). On a forest Delta must sit inside one
// tree component.
inline std::optional<MoveDescriptor> is_essential_flip(const Dag& a, const Dag& b) {
  detail::require_common_forest(a, b);
  const auto g = a.skeleton();
  require(g.is_forest(), ErrorCode::NonForestSkeleton, "essential flips are defined on forest skeletons");
  auto delta = delta_set(a, b);
  if (delta.empty()) return std::nullopt;
  auto comps = g.components();
  for (const auto& c : comps) {
    bool hit = std::binary_search(c.begin(), c.end(), delta.front());
    for (Node x : delta)
      if (hit != std::binary_search(c.begin(), c.end(), x)) return std::nullopt;
  }
  auto span = detail::edges_within(g, detail::prune_to_span(g, delta));
  const auto ea = essential_graph_forest(a);
  const auto eb = essential_graph_forest(b);
  for (const auto& e : span) {
    bool forward = ea.has_arc(e.u, e.v) && eb.has_arc(e.v, e.u);
    bool backward = ea.has_arc(e.v, e.u) && eb.has_arc(e.u, e.v);
    if (!forward && !backward) return std::nullopt;
  }
  return EssentialFlip{span};
}

// Local check of the subtree table for g against g with T reversed.
inline bool is_essential_flip_local(const Dag& g, const std::vector<Edge>& subtree) {
  require(edges_connected(subtree), ErrorCode::DisconnectedSubtree, "subtree must be a nonempty connected edge set");
  const auto skel = g.skeleton();
  require(skel.is_forest(), ErrorCode::NonForestSkeleton, "local flip check needs a forest skeleton");
  for (const auto& e : subtree)
    require(skel.adjacent(e.u, e.v), ErrorCode::InvalidArgument, "subtree edge " + to_string(e) + " not in skeleton");
  const Dag h = g.with_reversed(subtree);
  const auto delta = delta_set(g, h);
  if (delta.empty()) return false;

  const int p = g.node_count();
  std::vector<NodeSet> tn(static_cast<std::size_t>(p));  // neighbors inside T
  for (const auto& e : subtree) {
    tn[e.u].push_back(e.v);
    tn[e.v].push_back(e.u);
  }
  std::vector<char> in_delta(static_cast<std::size_t>(p), 0);
  for (Node x : delta) in_delta[x] = 1;

  std::optional<PartiallyDirectedGraph> eg, eh;
  auto ess_g = [&]() -> const PartiallyDirectedGraph& {
    if (!eg) eg = essential_graph_forest(g);
    return *eg;
  };
  auto ess_h = [&]() -> const PartiallyDirectedGraph& {
    if (!eh) eh = essential_graph_forest(h);
    return *eh;
  };
  // any Delta node reachable inside T from `start` without passing `block`
  auto delta_beyond = [&](Node start, Node block) {
    std::vector<Node> stack{start};
    std::vector<char> seen(static_cast<std::size_t>(p), 0);
    seen[start] = seen[block] = 1;
    while (!stack.empty()) {
      Node x = stack.back();
      stack.pop_back();
      if (in_delta[x]) return true;
      for (Node y : tn[x])
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    return false;
  };

  for (Node i = 0; i < p; ++i) {
    if (tn[i].size() < 2) continue;
    NodeSet tpa, tch;
    for (Node y : tn[i]) (g.has_arc(y, i) ? tpa : tch).push_back(y);
    const std::size_t a = tpa.size(), c = tch.size();
    std::size_t outside = 0;
    for (Node y : g.parents(i))
      if (std::find(tn[i].begin(), tn[i].end(), y) == tn[i].end()) ++outside;
    if (outside >= 1) continue;  // satisfies IV, V and VI outright
    if (a >= 2 && c == 1) {  // IV
      Node ci = tch[0];
      if (!v_structures_at(g, ci).empty() && !detail::has_essential_parent(ess_h(), h, ci)) return false;
    } else if (a == 1 && c >= 2) {  // V
      Node pi = tpa[0];
      if (!v_structures_at(h, pi).empty() && !detail::has_essential_parent(ess_g(), g, pi)) return false;
    } else if (a == 1 && c == 1) {  // VI
      Node ci = tch[0], pi = tpa[0];
      if (delta_beyond(ci, i) && delta_beyond(pi, i)) {
        if (!detail::has_essential_parent(ess_h(), h, ci) || !detail::has_essential_parent(ess_g(), g, pi))
          return false;
      }
    }
    // types I, II, III carry no condition
  }
  return true;
}

// All nonempty connected edge subsets of a forest, as bitmasks over the
// sorted edge list, in lexicographic order of their sorted edge lists.
class Subtrees {
 public:
  // max_edges > 0 keeps only subtrees with at most that many edges; the
  // enumeration is then polynomial and `cap` is not enforced.
  Subtrees(const UndirectedGraph& g, std::size_t cap = kDefaultSubtreeCap, std::size_t max_edges = 0)
      : edges_(g.edges()) {
    require(edges_.size() <= 31, ErrorCode::CapExceeded, std::to_string(edges_.size()) + " edges exceeds 31");
    require(max_edges > 0 || edges_.size() <= cap, ErrorCode::CapExceeded,
            std::to_string(edges_.size()) + " edges exceeds subtree cap " + std::to_string(cap));
    const std::size_t m = edges_.size();
    std::vector<std::uint32_t> adj(m, 0);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        if (x != y && (edges_[x].u == edges_[y].u || edges_[x].u == edges_[y].v || edges_[x].v == edges_[y].u ||
                       edges_[x].v == edges_[y].v))
          adj[x] |= std::uint32_t{1} << y;
    // Grow from each root edge; edges below the root and already-branched
    // frontier edges are banned so every connected set appears once.
    std::function<void(std::uint32_t, std::uint32_t, std::uint32_t)> grow = [&](std::uint32_t set,
                                                                               std::uint32_t frontier,
                                                                               std::uint32_t banned) {
      masks_.push_back(set);
      if (max_edges > 0 && static_cast<std::size_t>(std::popcount(set)) >= max_edges) return;
      std::uint32_t done = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) {
        std::uint32_t e = f & (~f + 1);
        int k = std::countr_zero(e);
        std::uint32_t rest = frontier & ~done & ~e;
        std::uint32_t fresh = adj[k] & ~(set | banned | frontier);
        grow(set | e, rest | fresh, banned | done);
        done |= e;
      }
    };
    for (std::size_t r = 0; r < m; ++r) {
      std::uint32_t below = (std::uint32_t{1} << r) - 1;
      grow(std::uint32_t{1} << r, adj[r] & ~below, below);
    }
    std::sort(masks_.begin(), masks_.end(), lex_less);
  }

  std::size_t size() const { return masks_.size(); }
  const std::vector<std::uint32_t>& masks() const& { return masks_; }
  const std::vector<Edge>& edges() const& { return edges_; }

  std::vector<Edge> at(std::size_t k) const { return edges_of(masks_.at(k)); }

  std::vector<Edge> edges_of(std::uint32_t mask) const {
    std::vector<Edge> out;
    for (std::uint32_t m = mask; m; m &= m - 1) out.push_back(edges_[static_cast<std::size_t>(std::countr_zero(m))]);
    return out;
  }

  // Lexicographic comparison of the sorted index lists.
  static bool lex_less(std::uint32_t x, std::uint32_t y) {
    if (x == y) return false;
    std::uint32_t d = x ^ y;
    std::uint32_t low = d & (~d + 1);
    std::uint32_t above = ~((low << 1) - 1);
    if (x & low) return (y & above) != 0;  // y continues past the split point with a larger element
    return (x & above) == 0;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> masks_;
};

inline Subtrees enumerate_subtrees(const UndirectedGraph& g, std::size_t cap = kDefaultSubtreeCap) {
  require(g.is_tree(), ErrorCode::NotATree, "enumerate_subtrees needs a tree");
  return Subtrees(g, cap);
}

struct FlipNeighbor {
  Dag dag;
  MoveDescriptor move;
};

// Every DAG reachable from g by reversing a connected subtree that forms an
// essential flip, in canonical subtree order.
inline std::vector<FlipNeighbor> essential_flip_neighbors(const Dag& g, std::size_t cap = kDefaultSubtreeCap) {
  auto subtrees = enumerate_subtrees(g.skeleton(), cap);
  std::vector<FlipNeighbor> out;
  for (auto mask : subtrees.masks()) {
    auto t = subtrees.edges_of(mask);
    if (is_essential_flip_local(g, t)) out.push_back({g.with_reversed(t), EssentialFlip{t}});
  }
  return out;
}

}  // namespace cimtree
