#pragma once

// Small-instance enumeration: acyclic orientations, Pruefer codes, trees and
// graphs up to isomorphism, Markov equivalence classes by brute force.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cimtree/error.hpp"
#include "cimtree/graph.hpp"

namespace cimtree {

inline constexpr std::size_t kDefaultOrientationCap = 20;

namespace detail {

inline bool orientation_acyclic(int p, const std::vector<Edge>& edges, std::uint64_t mask) {
  std::vector<std::vector<Node>> out(static_cast<std::size_t>(p));
  std::vector<int> indeg(static_cast<std::size_t>(p), 0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    Node a = edges[k].u, b = edges[k].v;
    if ((mask >> k) & 1U) std::swap(a, b);
    out[a].push_back(b);
    ++indeg[b];
  }
  std::vector<Node> stack;
  for (Node i = 0; i < p; ++i)
    if (indeg[i] == 0) stack.push_back(i);
  int seen = 0;
  while (!stack.empty()) {
    Node x = stack.back();
    stack.pop_back();
    ++seen;
    for (Node y : out[x])
      if (--indeg[y] == 0) stack.push_back(y);
  }
  return seen == p;
}

// Bit k of the mask set means edge k is oriented v -> u instead of u -> v.
inline Dag orientation_from_mask(int p, const std::vector<Edge>& edges, std::uint64_t mask) {
  std::vector<Arc> arcs;
  arcs.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if ((mask >> k) & 1U) {
      arcs.push_back(Arc{edges[k].v, edges[k].u});
    } else {
      arcs.push_back(Arc{edges[k].u, edges[k].v});
    }
  }
  return Dag(p, std::move(arcs));
}

}  // namespace detail

// Lazy range over all acyclic orientations of an undirected graph.
class AcyclicOrientations {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Dag;
    using difference_type = std::ptrdiff_t;
    using pointer = const Dag*;
    using reference = const Dag&;

    iterator() = default;
    iterator(const AcyclicOrientations* owner, std::uint64_t mask) : owner_(owner), mask_(mask) { settle(); }

    const Dag& operator*() const { return current_; }
    const Dag* operator->() const { return &current_; }
    iterator& operator++() {
      ++mask_;
      settle();
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

   private:
    void settle() {
      const auto& g = owner_->graph_;
      while (mask_ < owner_->limit_ && !detail::orientation_acyclic(g.node_count(), g.edges(), mask_)) ++mask_;
      if (mask_ < owner_->limit_) current_ = detail::orientation_from_mask(g.node_count(), g.edges(), mask_);
    }

    const AcyclicOrientations* owner_ = nullptr;
    std::uint64_t mask_ = 0;
    Dag current_;
  };

  AcyclicOrientations(UndirectedGraph g, std::size_t cap) : graph_(std::move(g)) {
    require(graph_.edge_count() <= cap && graph_.edge_count() < 63, ErrorCode::CapExceeded,
            std::to_string(graph_.edge_count()) + " edges exceeds orientation cap " + std::to_string(cap));
    limit_ = std::uint64_t{1} << graph_.edge_count();
  }

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, limit_); }

 private:
  UndirectedGraph graph_;
  std::uint64_t limit_ = 1;
};

inline AcyclicOrientations enumerate_acyclic_orientations(const UndirectedGraph& g,
                                                          std::size_t cap = kDefaultOrientationCap) {
  return AcyclicOrientations(g, cap);
}

inline std::vector<Dag> all_acyclic_orientations(const UndirectedGraph& g, std::size_t cap = kDefaultOrientationCap) {
  std::vector<Dag> out;
  for (const auto& d : enumerate_acyclic_orientations(g, cap)) out.push_back(d);
  return out;
}

inline UndirectedGraph prufer_decode(const std::vector<Node>& seq, int p) {
  require(p >= 2, ErrorCode::BadLength, "Pruefer decoding needs p >= 2");
  require(seq.size() + 2 == static_cast<std::size_t>(p), ErrorCode::BadLength,
          "sequence length " + std::to_string(seq.size()) + " is not p-2 for p=" + std::to_string(p));
  std::vector<int> degree(static_cast<std::size_t>(p), 1);
  for (Node x : seq) {
    detail::check_node(x, p);
    ++degree[x];
  }
  std::vector<Edge> edges;
  std::set<Node> leaves;
  for (Node i = 0; i < p; ++i)
    if (degree[i] == 1) leaves.insert(i);
  for (Node x : seq) {
    Node leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.push_back(make_edge(leaf, x));
    if (--degree[x] == 1) leaves.insert(x);
  }
  Node a = *leaves.begin();
  Node b = *std::next(leaves.begin());
  edges.push_back(make_edge(a, b));
  return UndirectedGraph(p, std::move(edges));
}

// Overload with p inferred from the sequence length.
inline UndirectedGraph prufer_decode(const std::vector<Node>& seq) {
  return prufer_decode(seq, static_cast<int>(seq.size()) + 2);
}

inline std::vector<Node> prufer_encode(const UndirectedGraph& tree) {
  require(tree.is_tree(), ErrorCode::NotATree, "Pruefer encoding needs a tree");
  const int p = tree.node_count();
  require(p >= 2, ErrorCode::BadLength, "Pruefer encoding needs p >= 2");
  std::vector<std::size_t> degree(static_cast<std::size_t>(p));
  std::vector<char> removed(static_cast<std::size_t>(p), 0);
  std::set<Node> leaves;
  for (Node i = 0; i < p; ++i) {
    degree[i] = tree.degree(i);
    if (degree[i] == 1) leaves.insert(i);
  }
  std::vector<Node> seq;
  for (int step = 0; step + 2 < p; ++step) {
    Node leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    removed[leaf] = 1;
    for (Node y : tree.neighbors(leaf)) {
      if (removed[y]) continue;
      seq.push_back(y);
      if (--degree[y] == 1) leaves.insert(y);
    }
  }
  return seq;
}

namespace detail {

// AHU encoding of a rooted tree.
inline std::string rooted_code(const UndirectedGraph& g, Node root, Node parent) {
  std::vector<std::string> kids;
  for (Node y : g.neighbors(root))
    if (y != parent) kids.push_back(rooted_code(g, y, root));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

inline std::vector<Node> tree_centers(const UndirectedGraph& g) {
  const int p = g.node_count();
  if (p <= 2) {
    std::vector<Node> all(static_cast<std::size_t>(p));
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<std::size_t> degree(static_cast<std::size_t>(p));
  std::vector<Node> layer;
  for (Node i = 0; i < p; ++i) {
    degree[i] = g.degree(i);
    if (degree[i] <= 1) layer.push_back(i);
  }
  int remaining = p;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<Node> next;
    for (Node x : layer)
      for (Node y : g.neighbors(x))
        if (--degree[y] == 1) next.push_back(y);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace detail

// Canonical form of an unlabeled tree; equal strings iff isomorphic.
inline std::string tree_canonical_form(const UndirectedGraph& tree) {
  require(tree.is_tree(), ErrorCode::NotATree, "canonical form needs a tree");
  std::string best;
  for (Node c : detail::tree_centers(tree)) {
    auto code = detail::rooted_code(tree, c, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

// One labeled representative per isomorphism class of trees on p nodes,
// taken as the first tree met in Pruefer order.
inline std::vector<UndirectedGraph> nonisomorphic_trees(int p) {
  require(p >= 1 && p <= 10, ErrorCode::CapExceeded, "nonisomorphic_trees supports 1 <= p <= 10");
  if (p == 1) return {UndirectedGraph(1)};
  if (p == 2) return {UndirectedGraph(2, {Edge{0, 1}})};
  std::vector<UndirectedGraph> out;
  std::set<std::string> seen;
  std::vector<Node> seq(static_cast<std::size_t>(p - 2), 0);
  while (true) {
    auto t = prufer_decode(seq, p);
    if (seen.insert(tree_canonical_form(t)).second) out.push_back(std::move(t));
    std::size_t k = seq.size();
    while (k > 0 && seq[k - 1] == p - 1) seq[--k] = 0;
    if (k == 0) break;
    ++seq[k - 1];
  }
  return out;
}

// Canonical adjacency bitstring over all node permutations (small p only).
inline std::string graph_canonical_form(const UndirectedGraph& g) {
  const int p = g.node_count();
  require(p <= 8, ErrorCode::CapExceeded, "graph_canonical_form supports p <= 8");
  std::vector<int> perm(static_cast<std::size_t>(p));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string code;
    for (Node i = 0; i < p; ++i)
      for (Node j = i + 1; j < p; ++j) code.push_back(g.adjacent(perm[i], perm[j]) ? '1' : '0');
    if (best.empty() || code < best) best = code;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// One representative per isomorphism class of simple graphs on p nodes.
inline std::vector<UndirectedGraph> nonisomorphic_graphs(int p) {
  require(p >= 0 && p <= 6, ErrorCode::CapExceeded, "nonisomorphic_graphs supports p <= 6");
  std::vector<Edge> all;
  for (Node i = 0; i < p; ++i)
    for (Node j = i + 1; j < p; ++j) all.push_back(Edge{i, j});
  std::vector<UndirectedGraph> out;
  std::set<std::string> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < all.size(); ++k)
      if ((mask >> k) & 1U) edges.push_back(all[k]);
    UndirectedGraph g(p, std::move(edges));
    if (seen.insert(graph_canonical_form(g)).second) out.push_back(std::move(g));
  }
  return out;
}

// All members of the Markov equivalence class of d (by enumeration).
inline std::vector<Dag> mec_members(const Dag& d, std::size_t cap = kDefaultOrientationCap) {
  const auto vs = v_structures(d);
  std::vector<Dag> out;
  for (const auto& e : enumerate_acyclic_orientations(d.skeleton(), cap))
    if (v_structures(e) == vs) out.push_back(e);
  return out;
}

// Essential graph as the intersection of arc directions over the whole MEC.
// Works for any skeleton; used to cross-check the forest rule.
inline PartiallyDirectedGraph essential_graph_bruteforce(const Dag& d, std::size_t cap = kDefaultOrientationCap) {
  const auto members = mec_members(d, cap);
  std::vector<Arc> directed;
  std::vector<Edge> undirected;
  for (const auto& a : d.arcs()) {
    bool fixed = std::all_of(members.begin(), members.end(), [&](const Dag& m) { return m.has_arc(a.from, a.to); });
    if (fixed) {
      directed.push_back(a);
    } else {
      undirected.push_back(make_edge(a.from, a.to));
    }
  }
  return PartiallyDirectedGraph(d.node_count(), std::move(directed), std::move(undirected));
}

// Named small graphs used by tests and verification suites.
inline UndirectedGraph path_graph(int p) {
  std::vector<Edge> edges;
  for (Node i = 0; i + 1 < p; ++i) edges.push_back(Edge{i, i + 1});
  return UndirectedGraph(p, std::move(edges));
}

inline UndirectedGraph cycle_graph(int p) {
  require(p >= 3, ErrorCode::TooSmall, "cycle needs at least 3 nodes");
  auto edges = path_graph(p).edges();
  edges.push_back(Edge{0, p - 1});
  return UndirectedGraph(p, std::move(edges));
}

// Star with the center at node `leaves` and leaves 0..leaves-1.
inline UndirectedGraph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (Node i = 0; i < leaves; ++i) edges.push_back(Edge{i, leaves});
  return UndirectedGraph(leaves + 1, std::move(edges));
}

inline UndirectedGraph complete_graph(int p) {
  std::vector<Edge> edges;
  for (Node i = 0; i < p; ++i)
    for (Node j = i + 1; j < p; ++j) edges.push_back(Edge{i, j});
  return UndirectedGraph(p, std::move(edges));
}

// Complete graph on p nodes minus the edge {0, 1}.
inline UndirectedGraph complete_minus_edge(int p) {
  auto edges = complete_graph(p).edges();
  std::erase(edges, Edge{0, 1});
  return UndirectedGraph(p, std::move(edges));
}

// Center node joined to every node of a disjoint union of cliques of the
// given sizes; the center gets the last label.
inline UndirectedGraph star_like_graph(const std::vector<int>& clique_sizes) {
  std::vector<Edge> edges;
  Node next = 0;
  for (int s : clique_sizes) {
    for (Node a = next; a < next + s; ++a)
      for (Node b = a + 1; b < next + s; ++b) edges.push_back(Edge{a, b});
    next += s;
  }
  for (Node a = 0; a < next; ++a) edges.push_back(Edge{a, next});
  return UndirectedGraph(next + 1, std::move(edges));
}

}  // namespace cimtree
