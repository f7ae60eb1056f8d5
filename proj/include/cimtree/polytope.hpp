#pragma once

// CIM_G and stable set polytopes: exact vertex enumeration, LP edge
// certificates, dimensions, simplices and the STAB face correspondence.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <thread>
#include <utility>
#include <vector>

#include "cimtree/enumerate.hpp"
#include "cimtree/error.hpp"
#include "cimtree/graph.hpp"
#include "cimtree/imset.hpp"
#include "cimtree/lp.hpp"
#include "cimtree/moves.hpp"

namespace cimtree {

using Point = std::vector<int>;

// Distinct integer points; for CIM vertex sets also the imset coordinates and
// one representative DAG per point.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<Point> points, std::vector<SubsetKey> coordinates = {},
                     std::vector<Dag> representatives = {})
      : points_(std::move(points)), coords_(std::move(coordinates)), reps_(std::move(representatives)) {
    const std::size_t d = points_.empty() ? coords_.size() : points_[0].size();
    for (std::size_t k = 0; k < points_.size(); ++k) {
      require(points_[k].size() == d, ErrorCode::DimensionMismatch, "points of different dimension");
      require(index_.emplace(points_[k], k).second, ErrorCode::InvalidArgument, "duplicate vertex");
    }
    require(coords_.empty() || coords_.size() == d, ErrorCode::DimensionMismatch, "coordinate labels");
    require(reps_.empty() || reps_.size() == points_.size(), ErrorCode::DimensionMismatch, "representatives");
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t dimension() const { return points_.empty() ? coords_.size() : points_[0].size(); }
  const Point& operator[](std::size_t k) const { return points_.at(k); }
  const std::vector<Point>& points() const& { return points_; }
  const std::vector<SubsetKey>& coordinates() const& { return coords_; }
  const std::vector<Dag>& representatives() const& { return reps_; }

  std::optional<std::size_t> find(const Point& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const Point& x) const {
    auto k = find(x);
    if (!k) fail(ErrorCode::VertexNotFound, "point is not a vertex of the set");
    return *k;
  }

 private:
  std::vector<Point> points_;
  std::vector<SubsetKey> coords_;
  std::vector<Dag> reps_;
  std::map<Point, std::size_t> index_;
};

inline Point imset_point(const Dag& d, const std::vector<SubsetKey>& coords) {
  auto pa = detail::parent_masks(d);
  Point x(coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) x[k] = detail::imset_value(pa, coords[k].mask()) ? 1 : 0;
  return x;
}

// One vertex per Markov equivalence class with skeleton g, over the connected
// subsets of g (every other coordinate is zero on CIM_G).
inline VertexSet cim_vertices(const UndirectedGraph& g) {
  require(g.node_count() <= 8 || g.edge_count() <= 10, ErrorCode::CapExceeded,
          "cim_vertices needs p <= 8 or at most 10 edges");
  auto coords = connected_subsets(g);
  std::vector<Point> points;
  std::vector<Dag> reps;
  std::set<Point> seen;
  for (const auto& d : enumerate_acyclic_orientations(g)) {
    auto x = imset_point(d, coords);
    if (seen.insert(x).second) {
      points.push_back(std::move(x));
      reps.push_back(d);
    }
  }
  return VertexSet(std::move(points), std::move(coords), std::move(reps));
}

// A functional vanishing on a and b and at most -1 on every other vertex, if any.
inline std::optional<LinearFunctional> edge_certificate(const VertexSet& vs, std::size_t a, std::size_t b) {
  require(a < vs.size() && b < vs.size(), ErrorCode::VertexNotFound, "vertex index out of range");
  require(a != b, ErrorCode::InvalidArgument, "edge endpoints must differ");
  const std::size_t dim = vs.dimension();
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < dim; ++k) {
    bool varies = false;
    for (const auto& v : vs.points()) varies = varies || v[k] != vs[0][k];
    if (varies) active.push_back(k);
  }
  const std::size_t d = active.size();
  const std::size_t others = vs.size() - 2;
  // variables: w+ (d), w- (d), slacks (others)
  std::vector<RationalVector> rows;
  RationalVector rhs;
  const Point& pa = vs[a];
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (v == a || v == b) continue;
    RationalVector row(2 * d + others);
    for (std::size_t k = 0; k < d; ++k) {
      int x = vs[v][active[k]] - pa[active[k]];
      if (x) {
        row[k] = x;
        row[d + k] = -x;
      }
    }
    row[2 * d + rows.size()] = 1;
    rows.push_back(std::move(row));
    rhs.push_back(-1);
  }
  RationalVector eq(2 * d + others);
  for (std::size_t k = 0; k < d; ++k) {
    int x = vs[b][active[k]] - pa[active[k]];
    if (x) {
      eq[k] = x;
      eq[d + k] = -x;
    }
  }
  rows.push_back(std::move(eq));
  rhs.push_back(0);
  auto res = solve_lp(rows, rhs);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  LinearFunctional f;
  f.weights.assign(dim, 0);
  for (std::size_t k = 0; k < d; ++k) f.weights[active[k]] = res.x[k] - res.x[d + k];
  f.offset = -f(pa);
  return f;
}

inline bool is_polytope_edge(const VertexSet& vs, std::size_t a, std::size_t b) {
  return edge_certificate(vs, a, b).has_value();
}

inline bool is_polytope_edge(const VertexSet& vs, const Point& a, const Point& b) {
  return is_polytope_edge(vs, vs.index_of(a), vs.index_of(b));
}

// All certified edges (i < j), in lexicographic order. Pairs are independent
// LPs and are split across `threads` workers.
inline std::vector<std::pair<std::size_t, std::size_t>> polytope_edges(const VertexSet& vs, int threads = 1) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) pairs.emplace_back(i, j);
  std::vector<char> ok(pairs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) ok[k] = is_polytope_edge(vs, pairs[k].first, pairs[k].second);
  };
  const int n = std::max(1, threads);
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (ok[k]) out.push_back(pairs[k]);
  return out;
}

inline std::size_t affine_dimension(const VertexSet& vs) {
  require(!vs.empty(), ErrorCode::EmptySet, "affine dimension of an empty set");
  std::vector<RationalVector> rows;
  for (std::size_t k = 1; k < vs.size(); ++k) {
    RationalVector r(vs.dimension());
    for (std::size_t c = 0; c < r.size(); ++c) r[c] = vs[k][c] - vs[0][c];
    rows.push_back(std::move(r));
  }
  return matrix_rank(std::move(rows));
}

inline bool verify_simplex(const VertexSet& vs) { return !vs.empty() && vs.size() == affine_dimension(vs) + 1; }

// The affine functional taking the prescribed value at each vertex of a simplex.
inline LinearFunctional simplex_functional(const VertexSet& vs, const RationalVector& values) {
  require(values.size() == vs.size(), ErrorCode::DimensionMismatch, "one value per vertex");
  require(verify_simplex(vs), ErrorCode::NotASimplex, "vertex set is not affinely independent");
  const std::size_t d = vs.dimension();
  std::vector<RationalVector> a;
  // offset first, so constant values come back with zero weights
  for (const auto& v : vs.points()) {
    RationalVector row(d + 1);
    row[0] = 1;
    for (std::size_t k = 0; k < d; ++k) row[k + 1] = v[k];
    a.push_back(std::move(row));
  }
  auto x = solve_linear_system(std::move(a), values);
  if (!x) fail(ErrorCode::SingularSystem, "no affine functional takes these values");
  LinearFunctional f;
  f.weights.assign(x->begin() + 1, x->end());
  f.offset = (*x)[0];
  return f;
}

// Nonzero u1, u2 with a + u1, a + u2 and a + u1 + u2 = b all vertices.
inline std::optional<std::pair<Point, Point>> square_nonedge_witness(const VertexSet& vs, std::size_t a,
                                                                     std::size_t b) {
  require(a < vs.size() && b < vs.size(), ErrorCode::VertexNotFound, "vertex index out of range");
  if (a == b) return std::nullopt;
  const Point& x = vs[a];
  const Point& y = vs[b];
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (k == a || k == b) continue;
    Point other(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) other[c] = x[c] + y[c] - vs[k][c];
    if (!vs.find(other)) continue;
    Point u1(x.size()), u2(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
      u1[c] = vs[k][c] - x[c];
      u2[c] = y[c] - vs[k][c];
    }
    return std::pair{u1, u2};
  }
  return std::nullopt;
}

// The two splices D1, D2 of the non-edge argument for tree skeletons:
// c_G = c_D1 + c_D2 - c_H, with D1, D2 in neither class. Nothing when the
// pair is an essential flip or Markov equivalent.
inline std::optional<std::pair<Dag, Dag>> splice_square_witness(const Dag& gdag, const Dag& hdag) {
  detail::require_common_forest(gdag, hdag);
  const auto tree = gdag.skeleton();
  require(tree.is_tree(), ErrorCode::NotATree, "splice witness needs a tree skeleton");
  if (is_markov_equivalent(gdag, hdag) || is_essential_flip(gdag, hdag)) return std::nullopt;
  const auto span = span_subtree(tree, delta_set(gdag, hdag));
  auto build = [&](const Dag& gg, const Dag& hh, const PartiallyDirectedGraph& eg,
                   const PartiallyDirectedGraph& eh) -> std::optional<std::pair<Dag, Dag>> {
    for (const auto& e : span) {
      bool undirected = eg.has_undirected(e.u, e.v);
      bool same = (eg.has_arc(e.u, e.v) && eh.has_arc(e.u, e.v)) || (eg.has_arc(e.v, e.u) && eh.has_arc(e.v, e.u));
      if (!undirected && !same) continue;
      // orient as in some member of H's class, then pick a member of G's with the same arc
      Node i = hh.has_arc(e.u, e.v) ? e.u : e.v;
      Node j = i == e.u ? e.v : e.u;
      std::optional<Dag> g2;
      for (const auto& m : mec_members(gg))
        if (m.has_arc(i, j)) {
          g2 = m;
          break;
        }
      if (!g2) continue;
      Dag d1 = detail::splice(hh, *g2, i, j);
      Dag d2 = detail::splice(*g2, hh, i, j);
      return std::pair{d1, d2};
    }
    return std::nullopt;
  };
  const auto eg = essential_graph_forest(gdag);
  const auto eh = essential_graph_forest(hdag);
  if (auto w = build(gdag, hdag, eg, eh)) return w;
  // the undirected edge may sit in H instead; swap roles and swap back
  if (auto w = build(hdag, gdag, eh, eg)) return w;
  return std::nullopt;
}

// Stable sets of g, empty set first, in canonical subset order.
inline std::vector<NodeSet> stable_sets(const UndirectedGraph& g) {
  const int p = g.node_count();
  require(p <= 24, ErrorCode::CapExceeded, "stable_sets needs p <= 24");
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(p), 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= 1U << e.v;
    nbr[e.v] |= 1U << e.u;
  }
  std::vector<SubsetKey> found;
  std::vector<std::pair<int, std::uint32_t>> stack{{0, 0U}};
  while (!stack.empty()) {
    auto [k, set] = stack.back();
    stack.pop_back();
    if (k == p) {
      found.emplace_back(set);
      continue;
    }
    stack.push_back({k + 1, set});
    if (!(nbr[k] & set)) stack.push_back({k + 1, set | (1U << k)});
  }
  std::sort(found.begin(), found.end());
  std::vector<NodeSet> out;
  for (auto s : found) out.push_back(s.nodes());
  return out;
}

inline Point incidence_vector(int p, const NodeSet& s) {
  Point x(static_cast<std::size_t>(p), 0);
  for (Node v : s) x[v] = 1;
  return x;
}

inline VertexSet stab_vertices(const UndirectedGraph& g) {
  std::vector<Point> pts;
  for (const auto& s : stable_sets(g)) pts.push_back(incidence_vector(g.node_count(), s));
  return VertexSet(std::move(pts));
}

inline bool is_stable(const UndirectedGraph& g, const NodeSet& s) {
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = x + 1; y < s.size(); ++y)
      if (g.adjacent(s[x], s[y])) return false;
  return true;
}

// Adjacency on STAB(g): the symmetric difference induces a connected subgraph.
inline bool chvatal_is_edge(const UndirectedGraph& g, const NodeSet& a, const NodeSet& b) {
  require(is_stable(g, a) && is_stable(g, b), ErrorCode::NotStable, "arguments must be stable sets");
  require(a != b, ErrorCode::InvalidArgument, "stable sets must differ");
  NodeSet diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return g.induced_subgraph(diff).is_connected();
}

struct Correspondence {
  bool vertices_match = false;
  bool edges_checked = false;
  bool edges_match = false;
  std::size_t cim_vertex_count = 0;
  std::size_t stab_vertex_count = 0;
  // for each CIM vertex, its stable set
  std::vector<NodeSet> image;
};

namespace detail {

inline Correspondence triple_correspondence(const UndirectedGraph& g, const UndirectedGraph& stab_graph,
                                            const std::vector<std::array<Node, 3>>& triples, bool drop_empty,
                                            bool check_edges) {
  auto vs = cim_vertices(g);
  std::vector<NodeSet> target = stable_sets(stab_graph);
  if (drop_empty) target.erase(target.begin());
  Correspondence out;
  out.cim_vertex_count = vs.size();
  out.stab_vertex_count = target.size();
  std::map<SubsetKey, std::size_t> pos;
  for (std::size_t k = 0; k < vs.coordinates().size(); ++k) pos[vs.coordinates()[k]] = k;
  for (const auto& v : vs.points()) {
    NodeSet s;
    for (std::size_t t = 0; t < triples.size(); ++t) {
      auto key = SubsetKey::of({triples[t][0], triples[t][1], triples[t][2]});
      if (v[pos.at(key)]) s.push_back(static_cast<Node>(t));
    }
    out.image.push_back(std::move(s));
  }
  auto sorted_image = out.image;
  std::sort(sorted_image.begin(), sorted_image.end());
  std::sort(target.begin(), target.end());
  out.vertices_match = sorted_image == target &&
                       std::adjacent_find(sorted_image.begin(), sorted_image.end()) == sorted_image.end();
  if (check_edges && out.vertices_match) {
    auto stab = stab_vertices(stab_graph);
    out.edges_checked = true;
    out.edges_match = true;
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        auto sa = stab.index_of(incidence_vector(stab_graph.node_count(), out.image[a]));
        auto sb = stab.index_of(incidence_vector(stab_graph.node_count(), out.image[b]));
        if (is_polytope_edge(vs, a, b) != is_polytope_edge(stab, sa, sb)) out.edges_match = false;
      }
  }
  return out;
}

}  // namespace detail

// CIM_{I_p} against STAB(I_{p-2}): the triple {k, k+1, k+2} maps to node k.
inline Correspondence path_correspondence(int p) {
  require(p >= 2, ErrorCode::TooSmall, "path correspondence needs p >= 2");
  std::vector<std::array<Node, 3>> triples;
  for (Node k = 0; k + 2 < p; ++k) triples.push_back({k, k + 1, k + 2});
  return detail::triple_correspondence(path_graph(p), path_graph(std::max(0, p - 2)), triples, false, true);
}

// CIM_{C_p} against the nonempty stable sets of C_p: collider i maps to node i.
// Vertices only; the cycle polytope has extra edges.
inline Correspondence cycle_correspondence(int p) {
  require(p >= 4, ErrorCode::TooSmall, "cycle correspondence needs p >= 4");
  std::vector<std::array<Node, 3>> triples;
  for (Node i = 0; i < p; ++i) triples.push_back({(i + p - 1) % p, i, (i + 1) % p});
  return detail::triple_correspondence(cycle_graph(p), cycle_graph(p), triples, true, false);
}

struct StableFaceReport {
  bool ok = false;
  std::size_t face_vertex_count = 0;
  std::size_t stab_vertex_count = 0;
  std::size_t face_dimension = 0;
};

// Builds W = sum of w_i over internal nodes, takes the face of CIM_g where W
// is maximal and checks it against STAB of the internal-node subgraph.
inline StableFaceReport stable_face_report(const UndirectedGraph& g) {
  require(g.is_tree(), ErrorCode::NotATree, "stable_face_verify needs a tree");
  require(g.node_count() <= 8, ErrorCode::CapExceeded, "stable_face_verify needs p <= 8");
  const auto vs = cim_vertices(g);
  std::map<SubsetKey, std::size_t> pos;
  for (std::size_t k = 0; k < vs.coordinates().size(); ++k) pos[vs.coordinates()[k]] = k;
  const NodeSet internal = g.interior_nodes();
  const std::size_t m = internal.size();

  struct Local {
    std::vector<std::size_t> idx;  // positions of N_i
    VertexSet local;
    LinearFunctional w, s;
  };
  std::vector<Local> locals;
  std::vector<char> used(vs.dimension(), 0);
  bool disjoint = true;
  for (Node i : internal) {
    Local l;
    for (auto key : neighborhood_family(g, i)) {
      l.idx.push_back(pos.at(key));
      disjoint = disjoint && !used[pos.at(key)];
      used[pos.at(key)] = 1;
    }
    std::set<Point> pts;
    for (const auto& v : vs.points()) {
      Point r;
      for (auto k : l.idx) r.push_back(v[k]);
      pts.insert(r);
    }
    l.local = VertexSet(std::vector<Point>(pts.begin(), pts.end()));
    const Point ones(l.idx.size(), 1), zeros(l.idx.size(), 0);
    RationalVector wv, sv;
    for (const auto& r : l.local.points()) {
      wv.push_back((r == ones || r == zeros) ? 0 : -1);
      sv.push_back(r == ones ? 1 : 0);
    }
    l.w = simplex_functional(l.local, wv);
    l.s = simplex_functional(l.local, sv);
    locals.push_back(std::move(l));
  }
  auto restrict = [](const Point& v, const std::vector<std::size_t>& idx) {
    Point r;
    for (auto k : idx) r.push_back(v[k]);
    return r;
  };
  std::vector<Rational> score;
  for (const auto& v : vs.points()) {
    Rational total = 0;
    for (const auto& l : locals) total += l.w(restrict(v, l.idx));
    score.push_back(total);
  }
  const Rational best = *std::max_element(score.begin(), score.end());
  std::vector<Point> face;
  std::vector<NodeSet> images;
  bool ok = best == 0 && disjoint;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (score[k] != best) continue;
    face.push_back(vs[k]);
    NodeSet s;
    for (std::size_t t = 0; t < m; ++t) {
      Rational x = locals[t].s(restrict(vs[k], locals[t].idx));
      if (x != 0 && x != 1) ok = false;
      if (x == 1) s.push_back(static_cast<Node>(t));
    }
    images.push_back(std::move(s));
  }
  // inverse map: c_H plus the all-ones block on N_i for each i in the stable set
  Point base(vs.dimension(), 0);
  for (std::size_t k = 0; k < base.size(); ++k) base[k] = vs.coordinates()[k].size() == 2 ? 1 : 0;
  for (std::size_t f = 0; f < face.size(); ++f) {
    Point expect = base;
    for (Node t : images[f])
      for (auto k : locals[t].idx) expect[k] = 1;
    ok = ok && expect == face[f];
  }
  auto stab = stable_sets(g.induced_subgraph(internal));
  auto sorted = images;
  std::sort(sorted.begin(), sorted.end());
  std::sort(stab.begin(), stab.end());
  ok = ok && sorted == stab && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  StableFaceReport out;
  out.face_vertex_count = face.size();
  out.stab_vertex_count = stab.size();
  out.face_dimension = affine_dimension(VertexSet(face));
  out.ok = ok && out.face_dimension == m;
  return out;
}

inline bool stable_face_verify(const UndirectedGraph& g) { return stable_face_report(g).ok; }

// CIM of a disconnected graph is the product of the component polytopes.
inline bool product_structure_verify(const UndirectedGraph& g) {
  const auto comps = g.components();
  require(comps.size() >= 2, ErrorCode::InvalidArgument, "product structure needs at least two components");
  const auto vs = cim_vertices(g);
  std::vector<int> comp_of(static_cast<std::size_t>(g.node_count()));
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (Node x : comps[c]) comp_of[x] = static_cast<int>(c);
  // no 1-entry of any representative crosses components (all subsets, not just connected ones)
  if (g.node_count() <= 16) {
    for (const auto& d : vs.representatives())
      for (auto s : characteristic_imset(d, ImsetMode::Full).ones()) {
        auto nodes = s.nodes();
        for (Node x : nodes)
          if (comp_of[x] != comp_of[nodes[0]]) return false;
      }
  }
  std::vector<VertexSet> parts;
  std::size_t product = 1;
  for (const auto& c : comps) {
    parts.push_back(cim_vertices(g.induced_subgraph(c)));
    product *= parts.back().size();
  }
  // map each global coordinate to (component, local coordinate)
  std::vector<std::pair<std::size_t, std::size_t>> locate;
  for (auto key : vs.coordinates()) {
    auto nodes = key.nodes();
    std::size_t c = static_cast<std::size_t>(comp_of[nodes[0]]);
    NodeSet local;
    for (Node x : nodes) local.push_back(static_cast<Node>(std::lower_bound(comps[c].begin(), comps[c].end(), x) - comps[c].begin()));
    const auto& lc = parts[c].coordinates();
    auto it = std::find(lc.begin(), lc.end(), SubsetKey::of(local));
    if (it == lc.end()) return false;
    locate.emplace_back(c, static_cast<std::size_t>(it - lc.begin()));
  }
  std::set<std::vector<std::size_t>> tuples;
  for (const auto& v : vs.points()) {
    std::vector<Point> proj(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) proj[c].assign(parts[c].dimension(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) proj[locate[k].first][locate[k].second] = v[k];
    std::vector<std::size_t> t;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      auto idx = parts[c].find(proj[c]);
      if (!idx) return false;
      t.push_back(*idx);
    }
    tuples.insert(t);
  }
  return tuples.size() == vs.size() && vs.size() == product;
}

// Text dump: each vertex as imset lines, then the certified edge adjacency.
inline void write_vertex_dump(std::ostream& out, const VertexSet& vs,
                              const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  for (std::size_t k = 0; k < vs.size(); ++k) {
    out << "vertex " << k << "\n";
    for (std::size_t c = 0; c < vs.dimension(); ++c) {
      if (!vs[k][c]) continue;
      if (vs.coordinates().empty()) {
        out << "x:" << c << "=1\n";
      } else {
        out << "S:" << to_string(vs.coordinates()[c]) << "=1\n";
      }
    }
  }
  std::vector<std::vector<std::size_t>> adj(vs.size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  out << "edges\n";
  for (std::size_t k = 0; k < vs.size(); ++k) {
    std::sort(adj[k].begin(), adj[k].end());
    out << k << ":";
    for (auto x : adj[k]) out << " " << x;
    out << "\n";
  }
}

}  // namespace cimtree
