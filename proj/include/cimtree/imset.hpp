#pragma once

// Characteristic imsets: c(S) = 1 iff some i in S has S \ {i} among its parents.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cimtree/error.hpp"
#include "cimtree/graph.hpp"

namespace cimtree {

inline constexpr int kDefaultFullImsetCap = 16;

// A node subset stored as a bitmask (p <= 64).
class SubsetKey {
 public:
  constexpr SubsetKey() = default;
  constexpr explicit SubsetKey(std::uint64_t mask) : mask_(mask) {}

  static SubsetKey of(const NodeSet& nodes) {
    std::uint64_t m = 0;
    for (Node x : nodes) {
      require(x >= 0 && x < 64, ErrorCode::LabelOutOfRange, "subset member " + std::to_string(x));
      m |= std::uint64_t{1} << x;
    }
    return SubsetKey(m);
  }
  static SubsetKey of(std::initializer_list<Node> nodes) { return of(NodeSet(nodes)); }

  constexpr std::uint64_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool contains(Node x) const { return x >= 0 && x < 64 && ((mask_ >> x) & 1U); }
  bool subset_of(SubsetKey other) const { return (mask_ & ~other.mask_) == 0; }
  SubsetKey with(Node x) const { return SubsetKey(mask_ | (std::uint64_t{1} << x)); }
  SubsetKey without(Node x) const { return SubsetKey(mask_ & ~(std::uint64_t{1} << x)); }

  NodeSet nodes() const {
    NodeSet out;
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  friend constexpr bool operator==(SubsetKey a, SubsetKey b) { return a.mask_ == b.mask_; }

  // Canonical order: by size, then lexicographic on the sorted member lists.
  friend std::strong_ordering operator<=>(SubsetKey a, SubsetKey b) {
    int sa = std::popcount(a.mask_), sb = std::popcount(b.mask_);
    if (sa != sb) return sa <=> sb;
    std::uint64_t diff = a.mask_ ^ b.mask_;
    if (diff == 0) return std::strong_ordering::equal;
    std::uint64_t low = diff & (~diff + 1);
    return (a.mask_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  std::uint64_t mask_ = 0;
};

inline std::string to_string(SubsetKey s) {
  std::string out = "{";
  bool first = true;
  for (Node x : s.nodes()) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + "}";
}

namespace detail {

inline std::vector<std::uint64_t> parent_masks(const Dag& d) {
  std::vector<std::uint64_t> pa(static_cast<std::size_t>(d.node_count()), 0);
  for (const auto& a : d.arcs()) pa[a.to] |= std::uint64_t{1} << a.from;
  return pa;
}

// c(S) straight from the definition, given parent bitmasks.
inline bool imset_value(const std::vector<std::uint64_t>& pa, std::uint64_t s) {
  for (std::uint64_t m = s; m; m &= m - 1) {
    int i = std::countr_zero(m);
    if (((s & ~(std::uint64_t{1} << i)) & ~pa[i]) == 0) return true;
  }
  return false;
}

}  // namespace detail

enum class ImsetMode { Full, Truncated23 };

class CharacteristicImset {
 public:
  CharacteristicImset() = default;

  // `ones` may be unsorted and contain duplicates.
  CharacteristicImset(int p, ImsetMode mode, std::vector<SubsetKey> ones) : p_(p), mode_(mode) {
    if (mode == ImsetMode::Truncated23) {
      std::erase_if(ones, [](SubsetKey s) { return s.size() < 2 || s.size() > 3; });
    }
    std::sort(ones.begin(), ones.end());
    ones.erase(std::unique(ones.begin(), ones.end()), ones.end());
    ones_ = std::move(ones);
  }

  int node_count() const { return p_; }
  ImsetMode mode() const { return mode_; }
  const std::vector<SubsetKey>& ones() const& { return ones_; }
  std::vector<SubsetKey> ones() && { return std::move(ones_); }

  int operator()(SubsetKey s) const { return std::binary_search(ones_.begin(), ones_.end(), s) ? 1 : 0; }
  int value(const NodeSet& s) const { return (*this)(SubsetKey::of(s)); }

  friend bool operator==(const CharacteristicImset& a, const CharacteristicImset& b) {
    return a.p_ == b.p_ && a.mode_ == b.mode_ && a.ones_ == b.ones_;
  }

 private:
  int p_ = 0;
  ImsetMode mode_ = ImsetMode::Truncated23;
  std::vector<SubsetKey> ones_;
};

inline CharacteristicImset characteristic_imset(const Dag& d, ImsetMode mode = ImsetMode::Truncated23,
                                                int full_cap = kDefaultFullImsetCap) {
  const int p = d.node_count();
  if (mode == ImsetMode::Full) {
    require(p <= full_cap, ErrorCode::CapExceeded,
            "full imset for p=" + std::to_string(p) + " exceeds cap " + std::to_string(full_cap));
  }
  require(p <= 64, ErrorCode::CapExceeded, "imsets support at most 64 nodes");
  std::vector<SubsetKey> ones;
  for (Node i = 0; i < p; ++i) {
    const auto& pa = d.parents(i);
    const std::uint64_t self = std::uint64_t{1} << i;
    if (mode == ImsetMode::Full) {
      require(pa.size() < 31, ErrorCode::CapExceeded, "parent set too large for full imset");
      const std::uint64_t count = std::uint64_t{1} << pa.size();
      for (std::uint64_t sub = 1; sub < count; ++sub) {
        std::uint64_t m = self;
        for (std::size_t k = 0; k < pa.size(); ++k)
          if ((sub >> k) & 1U) m |= std::uint64_t{1} << pa[k];
        ones.emplace_back(m);
      }
    } else {
      for (std::size_t a = 0; a < pa.size(); ++a) {
        const std::uint64_t ma = self | (std::uint64_t{1} << pa[a]);
        ones.emplace_back(ma);
        for (std::size_t b = a + 1; b < pa.size(); ++b) ones.emplace_back(ma | (std::uint64_t{1} << pa[b]));
      }
    }
  }
  return CharacteristicImset(p, mode, std::move(ones));
}

// Compares only the |S| in {2,3} coordinates, which determine a DAG imset.
inline bool imsets_equal(const CharacteristicImset& a, const CharacteristicImset& b) {
  require(a.node_count() == b.node_count(), ErrorCode::DimensionMismatch, "imsets over different node counts");
  auto small = [](const CharacteristicImset& c) {
    std::vector<SubsetKey> out;
    for (auto s : c.ones())
      if (s.size() <= 3) out.push_back(s);
    return out;
  };
  return small(a) == small(b);
}

inline UndirectedGraph recover_skeleton(const CharacteristicImset& c) {
  std::vector<Edge> edges;
  for (auto s : c.ones()) {
    if (s.size() == 2) {
      auto n = s.nodes();
      edges.push_back(Edge{n[0], n[1]});
    }
  }
  return UndirectedGraph(c.node_count(), std::move(edges));
}

inline std::vector<VStructure> recover_v_structures(const CharacteristicImset& c) {
  std::vector<VStructure> out;
  for (auto s : c.ones()) {
    if (s.size() != 3) continue;
    auto n = s.nodes();
    // The collider is the member adjacent to both others while they are not adjacent.
    for (int k = 0; k < 3; ++k) {
      Node j = n[k], i = n[(k + 1) % 3], l = n[(k + 2) % 3];
      if (c(SubsetKey::of({i, j})) && c(SubsetKey::of({j, l})) && !c(SubsetKey::of({i, l}))) {
        out.push_back(make_v_structure(i, j, l));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Delta(a, b): nodes whose centered v-structure sets differ. Equivalent to the
// imset restricted to {S : i in S within cl(i), |S| >= 3} differing on a forest.
inline NodeSet delta_set(const Dag& a, const Dag& b) {
  require(a.node_count() == b.node_count(), ErrorCode::DimensionMismatch, "node counts differ");
  const auto g = a.skeleton();
  require(g == b.skeleton(), ErrorCode::SkeletonMismatch, "delta_set needs a common skeleton");
  require(g.is_forest(), ErrorCode::NotATree, "delta_set needs a tree (or forest) skeleton");
  NodeSet out;
  for (Node j = 0; j < a.node_count(); ++j)
    if (v_structures_at(a, j) != v_structures_at(b, j)) out.push_back(j);
  return out;
}

// Subsets S with |S| >= 2 inducing a connected subgraph of g, in canonical
// order. Every other coordinate is identically zero on the imsets of DAGs
// with skeleton g.
inline std::vector<SubsetKey> connected_subsets(const UndirectedGraph& g, int cap = 20) {
  const int p = g.node_count();
  require(p <= cap, ErrorCode::CapExceeded, "connected_subsets: p exceeds cap " + std::to_string(cap));
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(p), 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= std::uint64_t{1} << e.v;
    nbr[e.v] |= std::uint64_t{1} << e.u;
  }
  std::vector<SubsetKey> out;
  const std::uint64_t limit = std::uint64_t{1} << p;
  for (std::uint64_t m = 1; m < limit; ++m) {
    if (std::popcount(m) < 2) continue;
    std::uint64_t reached = m & (~m + 1);
    std::uint64_t frontier = reached;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= nbr[std::countr_zero(f)];
      next &= m & ~reached;
      reached |= next;
      frontier = next;
    }
    if (reached == m) out.emplace_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// N_i: sets S with i in S, S within the closed neighborhood of i, |S| >= 3.
inline std::vector<SubsetKey> neighborhood_family(const UndirectedGraph& g, Node i) {
  const auto& ne = g.neighbors(i);
  require(ne.size() < 31, ErrorCode::CapExceeded, "neighborhood too large");
  std::vector<SubsetKey> out;
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << ne.size()); ++sub) {
    if (std::popcount(sub) < 2) continue;
    std::uint64_t m = std::uint64_t{1} << i;
    for (std::size_t k = 0; k < ne.size(); ++k)
      if ((sub >> k) & 1U) m |= std::uint64_t{1} << ne[k];
    out.emplace_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// 0/1 coordinates of c over the given keys.
inline std::vector<int> imset_vector(const CharacteristicImset& c, const std::vector<SubsetKey>& coords) {
  std::vector<int> out;
  out.reserve(coords.size());
  for (auto s : coords) out.push_back(c(s));
  return out;
}

// Text dump: one `S:{i,j,...}=1` line per 1-entry, canonical order.
inline void write_imset(std::ostream& out, const CharacteristicImset& c) {
  for (auto s : c.ones()) out << "S:" << to_string(s) << "=1\n";
}

inline std::string format_imset(const CharacteristicImset& c) {
  std::ostringstream out;
  write_imset(out, c);
  return out.str();
}

}  // namespace cimtree
