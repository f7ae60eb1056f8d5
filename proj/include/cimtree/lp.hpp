#pragma once

// Exact rational linear programming: dense two-phase simplex with Bland's rule.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "cimtree/error.hpp"

namespace cimtree {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// x -> weights . x + offset
struct LinearFunctional {
  RationalVector weights;
  Rational offset = 0;

  template <class Vec>
  Rational operator()(const Vec& x) const {
    require(x.size() == weights.size(), ErrorCode::DimensionMismatch, "functional and point dimensions differ");
    Rational s = offset;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k] != 0) s += weights[k] * x[k];
    return s;
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RationalVector x;
  Rational objective = 0;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows * (cols + 1)), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r * (n_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return at(r, n_); }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  // Pivot on (pr, pc); `cost` is the reduced-cost row (length n_ + 1).
  void pivot(std::size_t pr, std::size_t pc, RationalVector& cost) {
    const Rational p = at(pr, pc);
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c <= n_; ++c) {
      Rational& x = at(pr, c);
      if (x != 0) {
        x /= p;
        nz.push_back(c);
      }
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == pr) continue;
      const Rational f = at(r, pc);
      if (f == 0) continue;
      for (std::size_t c : nz) at(r, c) -= f * at(pr, c);
    }
    const Rational f = cost[pc];
    if (f != 0)
      for (std::size_t c : nz) cost[c] -= f * at(pr, c);
    basis_[pr] = pc;
  }

  // Minimizes with the given reduced costs over columns < limit. Returns false
  // when unbounded.
  bool run(RationalVector& cost, std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t c = 0; c < limit; ++c)
        if (cost[c] < 0) {
          enter = c;
          break;
        }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        const Rational& a = at(r, enter);
        if (a <= 0) continue;
        Rational ratio = rhs(r) / a;
        if (leave == m_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter, cost);
    }
  }

 private:
  std::size_t m_, n_;
  std::vector<Rational> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

// minimize c.x subject to A x = b, x >= 0. An empty c asks for feasibility only.
inline LpResult solve_lp(const std::vector<RationalVector>& a, const RationalVector& b, const RationalVector& c = {}) {
  const std::size_t m = a.size();
  require(b.size() == m, ErrorCode::DimensionMismatch, "rhs length differs from row count");
  const std::size_t n = m ? a[0].size() : c.size();
  for (const auto& row : a) require(row.size() == n, ErrorCode::DimensionMismatch, "ragged constraint matrix");
  require(c.empty() || c.size() == n, ErrorCode::DimensionMismatch, "cost length differs from column count");

  detail::Tableau t(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = b[r] < 0;
    for (std::size_t k = 0; k < n; ++k)
      if (a[r][k] != 0) t.at(r, k) = flip ? Rational(-a[r][k]) : a[r][k];
    t.at(r, n + r) = 1;
    t.rhs(r) = flip ? Rational(-b[r]) : b[r];
    t.basis(r) = n + r;
  }
  // phase 1: minimize the sum of artificials
  RationalVector cost(n + m + 1);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k < n; ++k)
      if (t.at(r, k) != 0) cost[k] -= t.at(r, k);
  for (std::size_t r = 0; r < m; ++r) cost[n + m] -= t.rhs(r);
  t.run(cost, n);
  LpResult out;
  if (cost[n + m] != 0) return out;  // remaining artificial mass
  // drive zero-level artificials out where possible; rows left are redundant
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis(r) < n) continue;
    for (std::size_t k = 0; k < n; ++k)
      if (t.at(r, k) != 0) {
        t.pivot(r, k, cost);
        break;
      }
  }
  if (!c.empty()) {
    RationalVector cost2(n + m + 1);
    for (std::size_t k = 0; k < n; ++k) cost2[k] = c[k];
    for (std::size_t r = 0; r < m; ++r) {
      std::size_t bk = t.basis(r);
      if (bk >= n || c[bk] == 0) continue;
      const Rational f = c[bk];
      for (std::size_t k = 0; k <= n + m; ++k)
        if (t.at(r, k) != 0) cost2[k] -= f * t.at(r, k);
    }
    if (!t.run(cost2, n)) {
      out.status = LpStatus::Unbounded;
      return out;
    }
  }
  out.status = LpStatus::Optimal;
  out.x.assign(n, 0);
  for (std::size_t r = 0; r < m; ++r)
    if (t.basis(r) < n) out.x[t.basis(r)] = t.rhs(r);
  for (std::size_t k = 0; k < c.size(); ++k) out.objective += c[k] * out.x[k];
  return out;
}

// Exact rank by Gaussian elimination.
inline std::size_t matrix_rank(std::vector<RationalVector> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < n; ++k)
        if (rows[rank][k] != 0) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Some solution of A x = b (free variables set to zero), or nothing.
inline std::optional<RationalVector> solve_linear_system(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t m = a.size();
  if (m == 0) return RationalVector{};
  const std::size_t n = a[0].size();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t piv = row;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[row]);
    std::swap(b[piv], b[row]);
    Rational inv = 1 / a[row][c];
    for (std::size_t k = c; k < n; ++k) a[row][k] *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k < n; ++k)
        if (a[row][k] != 0) a[r][k] -= f * a[row][k];
      b[r] -= f * b[row];
    }
    pivots.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (b[r] != 0) return std::nullopt;
  RationalVector x(n, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
  return x;
}

}  // namespace cimtree
