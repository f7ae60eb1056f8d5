#pragma once

// Shared test fixtures and small independent oracles. The oracles here work
// straight from arc lists so they do not share code paths with the library.

#include <algorithm>
#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

#include "cimtree/graph.hpp"

namespace fixtures {

using cimtree::Arc;
using cimtree::Dag;
using cimtree::Edge;

// Labels for the 19-node essential flip example: delta_k -> k-1, n_k -> k+6.
inline int d(int k) { return k - 1; }
inline int n(int k) { return k + 6; }

struct FlipExample {
  Dag g;
  Dag h;
  Dag dd;  // third graph forming an essential flip with both g and h
};

inline FlipExample flip_example() {
  // arcs reversed between g and h
  std::vector<Arc> core = {{n(3), d(1)}, {d(2), n(3)}, {d(3), d(2)}, {n(4), d(2)}, {d(3), d(4)},
                           {d(4), d(5)}, {d(3), d(7)}, {d(5), d(6)}, {d(5), n(6)}};
  std::vector<Arc> fixed = {{n(1), d(1)}, {n(2), d(1)}, {n(5), d(4)}, {n(7), d(6)},
                            {n(8), d(6)}, {n(9), d(7)}, {n(10), n(9)}, {n(11), n(9)}};
  std::vector<Arc> g = fixed, h = fixed;
  for (const auto& a : core) {
    g.push_back(a);
    h.push_back(Arc{a.to, a.from});
  }
  // n12 -- delta3 is undirected in the essential graph of g; any orientation works
  g.push_back({d(3), n(12)});
  h.push_back({d(3), n(12)});
  std::vector<Arc> dd = fixed;
  for (Arc a : std::vector<Arc>{{n(3), d(1)}, {d(2), n(3)}, {d(3), d(2)}, {n(4), d(2)}, {d(4), d(3)},
                                {d(5), d(4)}, {d(3), d(7)}, {d(6), d(5)}, {d(5), n(6)}, {d(3), n(12)}})
    dd.push_back(a);
  return {Dag(19, g), Dag(19, h), Dag(19, dd)};
}

// Every induced collider (i, j, k) with i < k, computed from the raw arc list.
inline std::set<std::tuple<int, int, int>> oracle_colliders(const Dag& dag) {
  const auto& arcs = dag.arcs();
  auto adjacent = [&](int a, int b) {
    return std::any_of(arcs.begin(), arcs.end(), [&](const Arc& x) {
      return (x.from == a && x.to == b) || (x.from == b && x.to == a);
    });
  };
  std::set<std::tuple<int, int, int>> out;
  for (const auto& x : arcs)
    for (const auto& y : arcs)
      if (x.to == y.to && x.from < y.from && !adjacent(x.from, y.from)) out.insert({x.from, x.to, y.from});
  return out;
}

// Truncated imset as a set of sorted tuples, computed directly from parents.
inline std::set<std::vector<int>> oracle_truncated_imset(const Dag& dag) {
  std::set<std::vector<int>> out;
  for (int i = 0; i < dag.node_count(); ++i) {
    std::vector<int> pa;
    for (const auto& a : dag.arcs())
      if (a.to == i) pa.push_back(a.from);
    for (std::size_t x = 0; x < pa.size(); ++x) {
      std::vector<int> s = {i, pa[x]};
      std::sort(s.begin(), s.end());
      out.insert(s);
      for (std::size_t y = x + 1; y < pa.size(); ++y) {
        std::vector<int> t = {i, pa[x], pa[y]};
        std::sort(t.begin(), t.end());
        out.insert(t);
      }
    }
  }
  return out;
}

// Full imset by definition: test every subset S against every i in S.
inline std::set<std::uint64_t> oracle_full_imset(const Dag& dag) {
  const int p = dag.node_count();
  std::vector<std::uint64_t> pa(static_cast<std::size_t>(p), 0);
  for (const auto& a : dag.arcs()) pa[a.to] |= std::uint64_t{1} << a.from;
  std::set<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << p); ++s) {
    if (__builtin_popcountll(s) < 2) continue;
    for (int i = 0; i < p; ++i) {
      if (!((s >> i) & 1U)) continue;
      std::uint64_t rest = s & ~(std::uint64_t{1} << i);
      if ((rest & ~pa[i]) == 0) {
        out.insert(s);
        break;
      }
    }
  }
  return out;
}

// All 2^m orientations of a tree (every one is acyclic).
inline std::vector<Dag> tree_orientations(const cimtree::UndirectedGraph& t) {
  std::vector<Dag> out;
  const auto& e = t.edges();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << e.size()); ++m) {
    std::vector<Arc> arcs;
    for (std::size_t k = 0; k < e.size(); ++k)
      arcs.push_back(((m >> k) & 1U) ? Arc{e[k].v, e[k].u} : Arc{e[k].u, e[k].v});
    out.emplace_back(t.node_count(), arcs);
  }
  return out;
}

}  // namespace fixtures
