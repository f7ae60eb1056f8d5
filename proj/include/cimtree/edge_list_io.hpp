#pragma once

// Edge-list text format:
//   p=<n>
//   i -- j      undirected
//   i -> j      directed
// Blank lines and anything after '#' are ignored.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cimtree/error.hpp"
#include "cimtree/graph.hpp"

namespace cimtree {

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline int parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != tok.size())
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": expected integer, got '" + tok + "'");
  return v;
}

}  // namespace detail

inline PartiallyDirectedGraph read_edge_list(std::istream& in) {
  std::string raw;
  int line = 0;
  int p = -1;
  std::vector<Arc> arcs;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto text = detail::trim(raw);
    if (text.empty()) continue;
    if (p < 0) {
      if (text.rfind("p=", 0) != 0)
        fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": expected header 'p=<n>'");
      p = detail::parse_int(detail::trim(text.substr(2)), line);
      if (p < 0) fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": negative node count");
      continue;
    }
    bool directed = false;
    auto pos = text.find("--");
    if (pos == std::string::npos) {
      pos = text.find("->");
      directed = true;
    }
    if (pos == std::string::npos)
      fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": expected 'i -- j' or 'i -> j'");
    int a = detail::parse_int(detail::trim(text.substr(0, pos)), line);
    int b = detail::parse_int(detail::trim(text.substr(pos + 2)), line);
    if (a < 0 || a >= p || b < 0 || b >= p)
      fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": node label outside [0,p)");
    if (a == b) fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": self-loop");
    if (directed) {
      arcs.push_back(Arc{a, b});
    } else {
      edges.push_back(make_edge(a, b));
    }
  }
  if (p < 0) fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": missing header 'p=<n>'");
  try {
    return PartiallyDirectedGraph(p, std::move(arcs), std::move(edges));
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

inline PartiallyDirectedGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const PartiallyDirectedGraph& g) {
  out << "p=" << g.node_count() << "\n";
  for (const auto& a : g.directed()) out << a.from << " -> " << a.to << "\n";
  for (const auto& e : g.undirected()) out << e.u << " -- " << e.v << "\n";
}

inline void write_edge_list(std::ostream& out, const UndirectedGraph& g) {
  write_edge_list(out, PartiallyDirectedGraph(g.node_count(), {}, g.edges()));
}

inline void write_edge_list(std::ostream& out, const Dag& d) {
  write_edge_list(out, PartiallyDirectedGraph(d.node_count(), d.arcs(), {}));
}

template <class G>
std::string format_edge_list(const G& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

}  // namespace cimtree
