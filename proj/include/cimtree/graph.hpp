#pragma once

// Graphs over the dense node set {0, ..., p-1}: undirected graphs, DAGs and
// partially directed graphs (essential graphs), plus the forest-specific
// Markov equivalence machinery.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cimtree/error.hpp"

namespace cimtree {

using Node = int;

// Sorted, duplicate-free list of nodes.
using NodeSet = std::vector<Node>;

// Unordered pair, stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;
  auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(Node a, Node b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Directed pair from -> to.
struct Arc {
  Node from = 0;
  Node to = 0;
  auto operator<=>(const Arc&) const = default;
};

// Collider `collider` with non-adjacent parents left < right.
struct VStructure {
  Node left = 0;
  Node collider = 0;
  Node right = 0;
  auto operator<=>(const VStructure&) const = default;
};

inline VStructure make_v_structure(Node a, Node collider, Node b) {
  return a < b ? VStructure{a, collider, b} : VStructure{b, collider, a};
}

inline std::string to_string(const Edge& e) { return std::to_string(e.u) + "--" + std::to_string(e.v); }
inline std::string to_string(const Arc& a) { return std::to_string(a.from) + "->" + std::to_string(a.to); }

namespace detail {

inline void check_node(Node i, int p) {
  if (i < 0 || i >= p) {
    fail(ErrorCode::LabelOutOfRange, "node " + std::to_string(i) + " outside [0," + std::to_string(p) + ")");
  }
}

inline bool contains(const NodeSet& s, Node x) { return std::binary_search(s.begin(), s.end(), x); }

inline void insert_sorted(NodeSet& s, Node x) {
  auto it = std::lower_bound(s.begin(), s.end(), x);
  if (it == s.end() || *it != x) s.insert(it, x);
}

}  // namespace detail

class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  explicit UndirectedGraph(int p) : p_(p), adj_(static_cast<std::size_t>(std::max(p, 0))) {
    require(p >= 0, ErrorCode::InvalidArgument, "negative node count");
  }

  UndirectedGraph(int p, std::vector<Edge> edges) : UndirectedGraph(p) {
    for (auto& e : edges) {
      detail::check_node(e.u, p);
      detail::check_node(e.v, p);
      require(e.u != e.v, ErrorCode::InvalidArgument, "self-loop at node " + std::to_string(e.u));
      e = make_edge(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(), ErrorCode::InvalidArgument,
            "duplicate edge");
    edges_ = std::move(edges);
    for (const auto& e : edges_) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& n : adj_) std::sort(n.begin(), n.end());
  }

  int node_count() const { return p_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const& { return edges_; }
  std::vector<Edge> edges() && { return std::move(edges_); }
  const NodeSet& neighbors(Node i) const { return adj_.at(static_cast<std::size_t>(i)); }
  std::size_t degree(Node i) const { return neighbors(i).size(); }

  bool adjacent(Node i, Node j) const {
    if (i < 0 || j < 0 || i >= p_ || j >= p_) return false;
    return detail::contains(adj_[i], j);
  }

  std::optional<std::size_t> edge_index(Edge e) const {
    e = make_edge(e.u, e.v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  // Connected components as sorted node lists, ordered by smallest member.
  std::vector<NodeSet> components() const {
    std::vector<int> label(static_cast<std::size_t>(p_), -1);
    std::vector<NodeSet> out;
    for (Node s = 0; s < p_; ++s) {
      if (label[s] >= 0) continue;
      NodeSet comp;
      std::vector<Node> stack{s};
      label[s] = static_cast<int>(out.size());
      while (!stack.empty()) {
        Node x = stack.back();
        stack.pop_back();
        comp.push_back(x);
        for (Node y : adj_[x]) {
          if (label[y] < 0) {
            label[y] = label[s];
            stack.push_back(y);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  bool is_connected() const { return p_ > 0 && components().size() == 1; }
  bool is_forest() const { return edges_.size() + components().size() == static_cast<std::size_t>(p_); }
  bool is_tree() const { return is_connected() && edges_.size() + 1 == static_cast<std::size_t>(p_); }

  NodeSet interior_nodes() const {
    NodeSet out;
    for (Node i = 0; i < p_; ++i)
      if (degree(i) >= 2) out.push_back(i);
    return out;
  }

  // Induced subgraph on `nodes`, relabeled so that nodes[k] becomes k.
  UndirectedGraph induced_subgraph(const NodeSet& nodes) const {
    std::vector<int> index(static_cast<std::size_t>(p_), -1);
    for (std::size_t k = 0; k < nodes.size(); ++k) index[nodes[k]] = static_cast<int>(k);
    std::vector<Edge> sub;
    for (const auto& e : edges_)
      if (index[e.u] >= 0 && index[e.v] >= 0) sub.push_back(make_edge(index[e.u], index[e.v]));
    return UndirectedGraph(static_cast<int>(nodes.size()), std::move(sub));
  }

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.p_ == b.p_ && a.edges_ == b.edges_;
  }

 private:
  int p_ = 0;
  std::vector<Edge> edges_;
  std::vector<NodeSet> adj_;
};

class Dag {
 public:
  Dag() = default;

  explicit Dag(int p) : Dag(p, {}) {}

  Dag(int p, std::vector<Arc> arcs) : p_(p) {
    require(p >= 0, ErrorCode::InvalidArgument, "negative node count");
    parents_.resize(static_cast<std::size_t>(p));
    children_.resize(static_cast<std::size_t>(p));
    std::vector<Edge> pairs;
    pairs.reserve(arcs.size());
    for (const auto& a : arcs) {
      detail::check_node(a.from, p);
      detail::check_node(a.to, p);
      require(a.from != a.to, ErrorCode::InvalidArgument, "self-loop at node " + std::to_string(a.from));
      pairs.push_back(make_edge(a.from, a.to));
    }
    std::sort(pairs.begin(), pairs.end());
    require(std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end(), ErrorCode::InvalidArgument,
            "more than one arc between a pair of nodes");
    std::sort(arcs.begin(), arcs.end());
    arcs_ = std::move(arcs);
    for (const auto& a : arcs_) {
      parents_[a.to].push_back(a.from);
      children_[a.from].push_back(a.to);
    }
    for (auto& s : parents_) std::sort(s.begin(), s.end());
    for (auto& s : children_) std::sort(s.begin(), s.end());

    // Kahn's algorithm; smallest available node first keeps the order canonical.
    std::vector<std::size_t> indeg(static_cast<std::size_t>(p));
    std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
    for (Node i = 0; i < p; ++i) {
      indeg[i] = parents_[i].size();
      if (indeg[i] == 0) ready.push(i);
    }
    while (!ready.empty()) {
      Node x = ready.top();
      ready.pop();
      order_.push_back(x);
      for (Node y : children_[x])
        if (--indeg[y] == 0) ready.push(y);
    }
    require(order_.size() == static_cast<std::size_t>(p), ErrorCode::CycleDetected, "arcs contain a directed cycle");
  }

  int node_count() const { return p_; }
  const std::vector<Arc>& arcs() const& { return arcs_; }
  std::vector<Arc> arcs() && { return std::move(arcs_); }
  const NodeSet& parents(Node i) const { return parents_.at(static_cast<std::size_t>(i)); }
  const NodeSet& children(Node i) const { return children_.at(static_cast<std::size_t>(i)); }
  const std::vector<Node>& topological_order() const { return order_; }

  bool has_arc(Node from, Node to) const {
    if (from < 0 || from >= p_) return false;
    return detail::contains(children_[from], to);
  }
  bool adjacent(Node i, Node j) const { return has_arc(i, j) || has_arc(j, i); }

  UndirectedGraph skeleton() const {
    std::vector<Edge> edges;
    edges.reserve(arcs_.size());
    for (const auto& a : arcs_) edges.push_back(make_edge(a.from, a.to));
    return UndirectedGraph(p_, std::move(edges));
  }

  // Copy with the arcs on the given skeleton edges reversed.
  Dag with_reversed(std::span<const Edge> edges) const {
    std::vector<Edge> flip(edges.begin(), edges.end());
    for (auto& e : flip) e = make_edge(e.u, e.v);
    std::sort(flip.begin(), flip.end());
    std::vector<Arc> arcs = arcs_;
    std::size_t hit = 0;
    for (auto& a : arcs) {
      if (std::binary_search(flip.begin(), flip.end(), make_edge(a.from, a.to))) {
        std::swap(a.from, a.to);
        ++hit;
      }
    }
    require(hit == static_cast<std::size_t>(std::unique(flip.begin(), flip.end()) - flip.begin()),
            ErrorCode::InvalidArgument, "reversal set contains a non-edge");
    return Dag(p_, std::move(arcs));
  }

  Dag reversed_all() const {
    std::vector<Arc> arcs = arcs_;
    for (auto& a : arcs) std::swap(a.from, a.to);
    return Dag(p_, std::move(arcs));
  }

  friend bool operator==(const Dag& a, const Dag& b) { return a.p_ == b.p_ && a.arcs_ == b.arcs_; }

 private:
  int p_ = 0;
  std::vector<Arc> arcs_;
  std::vector<NodeSet> parents_;
  std::vector<NodeSet> children_;
  std::vector<Node> order_;
};

class PartiallyDirectedGraph {
 public:
  PartiallyDirectedGraph() = default;

  PartiallyDirectedGraph(int p, std::vector<Arc> directed, std::vector<Edge> undirected) : p_(p) {
    for (auto& e : undirected) e = make_edge(e.u, e.v);
    std::sort(directed.begin(), directed.end());
    std::sort(undirected.begin(), undirected.end());
    std::vector<Edge> all;
    for (const auto& a : directed) {
      detail::check_node(a.from, p);
      detail::check_node(a.to, p);
      all.push_back(make_edge(a.from, a.to));
    }
    for (const auto& e : undirected) {
      detail::check_node(e.u, p);
      detail::check_node(e.v, p);
      all.push_back(e);
    }
    std::sort(all.begin(), all.end());
    require(std::adjacent_find(all.begin(), all.end()) == all.end(), ErrorCode::InvalidArgument,
            "directed and undirected parts overlap");
    directed_ = std::move(directed);
    undirected_ = std::move(undirected);
  }

  int node_count() const { return p_; }
  const std::vector<Arc>& directed() const& { return directed_; }
  std::vector<Arc> directed() && { return std::move(directed_); }
  const std::vector<Edge>& undirected() const& { return undirected_; }
  std::vector<Edge> undirected() && { return std::move(undirected_); }

  bool has_arc(Node from, Node to) const {
    return std::binary_search(directed_.begin(), directed_.end(), Arc{from, to});
  }
  bool has_undirected(Node a, Node b) const {
    return std::binary_search(undirected_.begin(), undirected_.end(), make_edge(a, b));
  }
  bool is_directed(Edge e) const { return has_arc(e.u, e.v) || has_arc(e.v, e.u); }

  UndirectedGraph skeleton() const {
    std::vector<Edge> edges = undirected_;
    for (const auto& a : directed_) edges.push_back(make_edge(a.from, a.to));
    return UndirectedGraph(p_, std::move(edges));
  }

  // A[i][j] = 1 iff i -> j or i -- j.
  std::vector<std::vector<int>> adjacency_matrix() const {
    std::vector<std::vector<int>> a(static_cast<std::size_t>(p_), std::vector<int>(static_cast<std::size_t>(p_), 0));
    for (const auto& arc : directed_) a[arc.from][arc.to] = 1;
    for (const auto& e : undirected_) a[e.u][e.v] = a[e.v][e.u] = 1;
    return a;
  }

  friend bool operator==(const PartiallyDirectedGraph& a, const PartiallyDirectedGraph& b) {
    return a.p_ == b.p_ && a.directed_ == b.directed_ && a.undirected_ == b.undirected_;
  }

 private:
  int p_ = 0;
  std::vector<Arc> directed_;
  std::vector<Edge> undirected_;
};

inline UndirectedGraph skeleton(const Dag& d) { return d.skeleton(); }

// Induced colliders i -> j <- k with i, k non-adjacent, at a single node.
inline std::vector<VStructure> v_structures_at(const Dag& d, Node j) {
  std::vector<VStructure> out;
  const auto& pa = d.parents(j);
  for (std::size_t x = 0; x < pa.size(); ++x)
    for (std::size_t y = x + 1; y < pa.size(); ++y)
      if (!d.adjacent(pa[x], pa[y])) out.push_back(VStructure{pa[x], j, pa[y]});
  return out;
}

inline std::vector<VStructure> v_structures(const Dag& d) {
  std::vector<VStructure> out;
  for (Node j = 0; j < d.node_count(); ++j) {
    auto at = v_structures_at(d, j);
    out.insert(out.end(), at.begin(), at.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_markov_equivalent(const Dag& a, const Dag& b) {
  require(a.node_count() == b.node_count(), ErrorCode::DimensionMismatch, "node counts differ");
  return a.skeleton() == b.skeleton() && v_structures(a) == v_structures(b);
}

namespace detail {

inline NodeSet reach(const Dag& d, Node start, bool downward) {
  check_node(start, d.node_count());
  std::vector<char> seen(static_cast<std::size_t>(d.node_count()), 0);
  std::vector<Node> stack{start};
  NodeSet out;
  while (!stack.empty()) {
    Node x = stack.back();
    stack.pop_back();
    for (Node y : downward ? d.children(x) : d.parents(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        stack.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline NodeSet ancestors(const Dag& d, Node i) { return detail::reach(d, i, false); }
inline NodeSet descendants(const Dag& d, Node i) { return detail::reach(d, i, true); }

// Nodes with at least two parents together with all their descendants. On a
// forest skeleton every outgoing arc of such a node is essential.
inline std::vector<char> protected_nodes(const Dag& d) {
  const int p = d.node_count();
  std::vector<char> mark(static_cast<std::size_t>(p), 0);
  std::vector<Node> stack;
  for (Node k = 0; k < p; ++k) {
    if (d.parents(k).size() >= 2) {
      mark[k] = 1;
      stack.push_back(k);
    }
  }
  while (!stack.empty()) {
    Node x = stack.back();
    stack.pop_back();
    for (Node y : d.children(x)) {
      if (!mark[y]) {
        mark[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return mark;
}

// Essential graph of a DAG whose skeleton is a forest. An arc i -> j stays
// directed iff j is a collider (two parents are never adjacent in a forest)
// or i is, or descends from, a node with at least two parents.
inline PartiallyDirectedGraph essential_graph_forest(const Dag& d) {
  require(d.skeleton().is_forest(), ErrorCode::NonForestSkeleton, "essential_graph_forest needs a forest skeleton");
  const auto mark = protected_nodes(d);
  std::vector<Arc> directed;
  std::vector<Edge> undirected;
  for (const auto& a : d.arcs()) {
    if (d.parents(a.to).size() >= 2 || mark[a.from]) {
      directed.push_back(a);
    } else {
      undirected.push_back(make_edge(a.from, a.to));
    }
  }
  return PartiallyDirectedGraph(d.node_count(), std::move(directed), std::move(undirected));
}

namespace detail {

// Strips leaves outside `keep` until none remain; what is left is the union of
// all tree paths between members of `keep` (per component of a forest).
inline std::vector<char> prune_to_span(const UndirectedGraph& g, const NodeSet& keep) {
  const int p = g.node_count();
  std::vector<char> alive(static_cast<std::size_t>(p), 1);
  std::vector<char> pinned(static_cast<std::size_t>(p), 0);
  for (Node k : keep) {
    check_node(k, p);
    pinned[k] = 1;
  }
  std::vector<std::size_t> deg(static_cast<std::size_t>(p));
  std::vector<Node> stack;
  for (Node i = 0; i < p; ++i) {
    deg[i] = g.degree(i);
    if (!pinned[i] && deg[i] <= 1) stack.push_back(i);
  }
  while (!stack.empty()) {
    Node x = stack.back();
    stack.pop_back();
    if (!alive[x]) continue;
    alive[x] = 0;
    for (Node y : g.neighbors(x)) {
      if (alive[y] && --deg[y] <= 1 && !pinned[y]) stack.push_back(y);
    }
  }
  return alive;
}

inline std::vector<Edge> edges_within(const UndirectedGraph& g, const std::vector<char>& alive) {
  std::vector<Edge> out;
  for (const auto& e : g.edges())
    if (alive[e.u] && alive[e.v]) out.push_back(e);
  return out;
}

}  // namespace detail

// Edges of the minimal subtree of the tree `g` spanning `nodes`.
inline std::vector<Edge> span_subtree(const UndirectedGraph& g, const NodeSet& nodes) {
  require(!nodes.empty(), ErrorCode::EmptySet, "span of the empty set");
  require(g.is_tree(), ErrorCode::NotATree, "span_subtree needs a tree");
  return detail::edges_within(g, detail::prune_to_span(g, nodes));
}

// Vertex set of the minimal spanning subtree.
inline NodeSet span_nodes(const UndirectedGraph& g, const NodeSet& nodes) {
  require(!nodes.empty(), ErrorCode::EmptySet, "span of the empty set");
  require(g.is_tree(), ErrorCode::NotATree, "span_nodes needs a tree");
  auto alive = detail::prune_to_span(g, nodes);
  NodeSet out;
  for (Node i = 0; i < g.node_count(); ++i)
    if (alive[i]) out.push_back(i);
  return out;
}

// Unique path between two nodes of a forest (empty if disconnected).
inline std::vector<Node> forest_path(const UndirectedGraph& g, Node from, Node to) {
  detail::check_node(from, g.node_count());
  detail::check_node(to, g.node_count());
  std::vector<int> prev(static_cast<std::size_t>(g.node_count()), -2);
  std::queue<Node> q;
  q.push(from);
  prev[from] = -1;
  while (!q.empty()) {
    Node x = q.front();
    q.pop();
    if (x == to) break;
    for (Node y : g.neighbors(x)) {
      if (prev[y] == -2) {
        prev[y] = x;
        q.push(y);
      }
    }
  }
  if (prev[to] == -2) return {};
  std::vector<Node> path;
  for (Node x = to; x != -1; x = prev[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

// True iff the edge set is nonempty and connected.
inline bool edges_connected(const std::vector<Edge>& edges) {
  if (edges.empty()) return false;
  std::vector<Node> nodes;
  for (const auto& e : edges) {
    nodes.push_back(e.u);
    nodes.push_back(e.v);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto idx = [&](Node x) { return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin()); };
  std::vector<std::size_t> parent(nodes.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t groups = nodes.size();
  for (const auto& e : edges) {
    auto a = find(idx(e.u));
    auto b = find(idx(e.v));
    if (a != b) {
      parent[a] = b;
      --groups;
    }
  }
  return groups == 1;
}

}  // namespace cimtree
