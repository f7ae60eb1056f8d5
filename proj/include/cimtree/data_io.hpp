#pragma once

// Numeric CSV: comma separated, '.' decimals, one header row of names.

#include <Eigen/Dense>

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cimtree/edge_list_io.hpp"
#include "cimtree/error.hpp"

namespace cimtree {

struct DataTable {
  std::vector<std::string> names;
  Eigen::MatrixXd values;  // rows are samples
};

namespace detail {

inline std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] inline void csv_fail(std::size_t line, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

// Line numbers in errors are 1-based; an empty input is reported at line 0.
inline DataTable read_csv(std::istream& in) {
  DataTable t;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::vector<double>> rows;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_commas(line);
    if (!header) {
      for (const auto& c : cells)
        if (c.empty()) detail::csv_fail(lineno, "empty column name");
      t.names = std::move(cells);
      header = true;
      continue;
    }
    if (cells.size() != t.names.size())
      detail::csv_fail(lineno, "expected " + std::to_string(t.names.size()) + " fields, found " +
                                   std::to_string(cells.size()));
    std::vector<double> row;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto& c = cells[k];
      double v = 0;
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (c.empty() || ec != std::errc() || ptr != c.data() + c.size())
        detail::csv_fail(lineno, "column " + t.names[k] + ": not a number: '" + c + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (!header) detail::csv_fail(0, "empty file");
  if (t.names.size() < 2) detail::csv_fail(1, "need at least 2 columns");
  if (rows.size() < 2) detail::csv_fail(lineno, "need at least 2 data rows");
  t.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(t.names.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      t.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return t;
}

inline DataTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ParseError, "cannot open " + path);
  return read_csv(in);
}

inline void write_csv(std::ostream& out, const DataTable& t) {
  for (std::size_t k = 0; k < t.names.size(); ++k) out << (k ? "," : "") << t.names[k];
  out << '\n';
  char buf[64];
  for (Eigen::Index r = 0; r < t.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < t.values.cols(); ++c) {
      auto res = std::to_chars(buf, buf + sizeof buf, t.values(r, c));
      out << (c ? "," : "") << std::string(buf, res.ptr);
    }
    out << '\n';
  }
}

// First column with zero sample variance, if any.
inline std::optional<std::size_t> constant_column(const DataTable& t) {
  for (Eigen::Index c = 0; c < t.values.cols(); ++c)
    if (t.values.col(c).maxCoeff() == t.values.col(c).minCoeff()) return static_cast<std::size_t>(c);
  return std::nullopt;
}

}  // namespace cimtree
