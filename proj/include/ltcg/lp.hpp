#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include "ltcg/error.hpp"
#include "ltcg/numeric.hpp"

namespace ltcg::lp {

/// Sign tests for the pivoting rules. Exact types compare against zero; doubles use a tolerance.
template <typename T>
struct Tolerance {
  static bool negative(const T& v) { return v < 0; }
  static bool positive(const T& v) { return v > 0; }
  static bool less(const T& a, const T& b) { return a < b; }
};

template <>
struct Tolerance<double> {
  static constexpr double eps = 1e-9;
  static bool negative(double v) { return v < -eps; }
  static bool positive(double v) { return v > eps; }
  static bool less(double a, double b) { return a < b - eps; }
};

/// A row or column given by its nonzero entries (index, value).
template <typename T>
using Sparse = std::vector<std::pair<std::size_t, T>>;

/// Dense simplex tableau for: maximize c.x subject to rows a.x <= b, x >= 0.
///
/// Rows may be added at any time (cutting planes); each brings its own slack. solve() runs the
/// primal simplex from a primal-feasible basis or the dual simplex from a dual-feasible one, so
/// adding a violated cut to an optimal tableau is resolved by dual pivots.
///
/// Pivot selection uses the largest violation (lowest index on ties); after a run of degenerate
/// pivots it switches to Bland-style smallest-index choices until progress resumes, which rules
/// out cycling.
template <typename T>
class Tableau {
 public:
  explicit Tableau(const std::vector<T>& c) : nv_(c.size()), obj_(c.size()) {
    for (std::size_t j = 0; j < nv_; ++j) obj_[j] = -c[j];
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
  [[nodiscard]] std::size_t variables() const noexcept { return nv_; }

  /// Appends a.x <= b over the structural variables; returns the row index.
  std::size_t add_row(const Sparse<T>& a, T b) {
    std::vector<T> row(obj_.size() + 1, T(0));
    for (const auto& [j, v] : a) {
      ensure(j < nv_, "row entry names a structural variable");
      row[j] += v;
    }
    // express in the current nonbasic variables
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t bj = basis_[r];
      if (row[bj] == T(0)) continue;
      const T factor = row[bj];
      const auto& src = rows_[r];
      for (std::size_t j = 0; j < src.size(); ++j) {
        if (src[j] != T(0)) row[j] -= factor * src[j];
      }
      b -= factor * rhs_[r];
      if constexpr (std::is_floating_point_v<T>) row[bj] = 0.0;
    }
    row.back() = T(1);  // own slack
    for (auto& other : rows_) other.push_back(T(0));
    obj_.push_back(T(0));
    rows_.push_back(std::move(row));
    rhs_.push_back(std::move(b));
    basis_.push_back(obj_.size() - 1);
    slack_of_row_.push_back(obj_.size() - 1);
    return rows_.size() - 1;
  }

  /// Pivots to optimality. Throws when the program is unbounded, infeasible, or over budget.
  void solve(std::size_t max_pivots = 1'000'000) {
    const bool primal_feasible = std::none_of(rhs_.begin(), rhs_.end(), [](const T& v) { return Tol::negative(v); });
    if (!primal_feasible) {
      const bool dual_feasible = std::none_of(obj_.begin(), obj_.end(), [](const T& v) { return Tol::negative(v); });
      require(dual_feasible, ErrorKind::InvalidArgument, "simplex needs a primal- or dual-feasible start");
      dual_simplex(max_pivots);
    }
    primal_simplex(max_pivots);
  }

  /// Optimal value of c.x.
  [[nodiscard]] const T& objective() const noexcept { return value_; }
  [[nodiscard]] std::size_t pivots() const noexcept { return pivots_; }

  [[nodiscard]] std::vector<T> primal() const {
    std::vector<T> x(nv_, T(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < nv_) x[basis_[r]] = rhs_[r];
    }
    return x;
  }

  /// One nonnegative multiplier per row: the reduced cost of its slack.
  [[nodiscard]] std::vector<T> duals() const {
    std::vector<T> u;
    u.reserve(rows_.size());
    for (auto j : slack_of_row_) u.push_back(obj_[j]);
    return u;
  }

 private:
  using Tol = Tolerance<T>;

  void pivot(std::size_t leave, std::size_t enter) {
    require(++pivots_ <= budget_, ErrorKind::TooLarge, "simplex pivot budget exhausted");
    auto& prow = rows_[leave];
    const T inv = T(1) / prow[enter];
    nz_.clear();
    for (std::size_t j = 0; j < prow.size(); ++j) {
      if (prow[j] != T(0)) {
        prow[j] *= inv;
        nz_.push_back(j);
      }
    }
    rhs_[leave] *= inv;
    auto eliminate = [&](std::vector<T>& row, T& rhs) {
      const T factor = row[enter];
      if (factor == T(0)) return;
      for (auto j : nz_) row[j] -= factor * prow[j];
      rhs -= factor * rhs_[leave];
      if constexpr (std::is_floating_point_v<T>) row[enter] = 0.0;
    };
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r != leave) eliminate(rows_[r], rhs_[r]);
    }
    eliminate(obj_, value_);
    basis_[leave] = enter;
  }

  void primal_simplex(std::size_t max_pivots) {
    budget_ = max_pivots;
    constexpr std::size_t kDegenerateLimit = 50;
    std::size_t degenerate_run = 0;
    const std::size_t width = obj_.size();
    while (true) {
      const bool bland = degenerate_run >= kDegenerateLimit;
      std::size_t enter = width;
      for (std::size_t j = 0; j < width; ++j) {
        if (!Tol::negative(obj_[j])) continue;
        if (enter == width || (!bland && obj_[j] < obj_[enter])) enter = j;
        if (bland) break;
      }
      if (enter == width) return;
      std::size_t leave = rows_.size();
      T best{};
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const T& coef = rows_[r][enter];
        if (!Tol::positive(coef)) continue;
        T ratio = rhs_[r] / coef;
        const bool take = leave == rows_.size() || Tol::less(ratio, best) ||
                          (!Tol::less(best, ratio) && basis_[r] < basis_[leave]);
        if (take) {
          leave = r;
          best = std::move(ratio);
        }
      }
      require(leave != rows_.size(), ErrorKind::InvalidArgument, "linear program is unbounded");
      degenerate_run = Tol::positive(best) ? 0 : degenerate_run + 1;
      pivot(leave, enter);
    }
  }

  void dual_simplex(std::size_t max_pivots) {
    budget_ = max_pivots;
    constexpr std::size_t kDegenerateLimit = 50;
    std::size_t degenerate_run = 0;
    const std::size_t width = obj_.size();
    while (true) {
      const bool bland = degenerate_run >= kDegenerateLimit;
      std::size_t leave = rows_.size();
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!Tol::negative(rhs_[r])) continue;
        if (leave == rows_.size()) {
          leave = r;
        } else if (bland ? basis_[r] < basis_[leave] : rhs_[r] < rhs_[leave]) {
          leave = r;
        }
      }
      if (leave == rows_.size()) return;
      const auto& row = rows_[leave];
      std::size_t enter = width;
      T best{};
      for (std::size_t j = 0; j < width; ++j) {
        if (!Tol::negative(row[j])) continue;
        T ratio = obj_[j] / -row[j];
        if (enter == width || Tol::less(ratio, best)) {
          enter = j;
          best = std::move(ratio);
        }
      }
      require(enter != width, ErrorKind::InvalidArgument, "linear program is infeasible");
      degenerate_run = Tol::positive(best) ? 0 : degenerate_run + 1;
      pivot(leave, enter);
    }
  }

  std::size_t nv_;
  std::vector<std::vector<T>> rows_;  // columns: structural, then one slack per row
  std::vector<T> rhs_;
  std::vector<T> obj_;  // reduced costs, same layout
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> slack_of_row_;
  T value_{0};
  std::size_t pivots_ = 0;
  std::size_t budget_ = 0;
  std::vector<std::size_t> nz_;
};

template <typename T>
struct Solution {
  T objective{};
  std::vector<T> primal;
  std::vector<T> duals;
  std::size_t pivots = 0;
};

/// maximize c.x subject to A x <= b, x >= 0 (dense convenience wrapper).
template <typename T>
Solution<T> maximize(const std::vector<std::vector<T>>& a, const std::vector<T>& b, const std::vector<T>& c,
                     std::size_t max_pivots = 1'000'000) {
  ensure(a.size() == b.size(), "one bound per row");
  Tableau<T> tab(c);
  for (std::size_t r = 0; r < a.size(); ++r) {
    ensure(a[r].size() == c.size(), "constraint width matches objective");
    Sparse<T> row;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (a[r][j] != T(0)) row.emplace_back(j, a[r][j]);
    }
    tab.add_row(row, b[r]);
  }
  tab.solve(max_pivots);
  return {tab.objective(), tab.primal(), tab.duals(), tab.pivots()};
}

/// Best rational approximation with denominator <= max_den (continued fractions).
[[nodiscard]] inline Rational rationalize(double x, std::int64_t max_den = 1'000'000) {
  require(std::isfinite(x), ErrorKind::InvalidArgument, "cannot rationalize a non-finite value");
  const bool neg = x < 0;
  double v = std::abs(x);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(v);
    if (fl > 9e15) break;
    const auto a = static_cast<std::int64_t>(fl);
    const std::int64_t q2 = q0 + a * q1;
    if (q2 > max_den) break;
    const std::int64_t p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = v - fl;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  if (q1 == 0) return Rational(0);
  Rational r{Int(p1), Int(q1)};
  return neg ? Rational(-r) : r;
}

}  // namespace ltcg::lp
