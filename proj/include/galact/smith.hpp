#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "galact/error.hpp"
#include "galact/polynomial.hpp"

namespace galact {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r,
/// nonnegative; `diagonal` holds min(rows, cols) entries.
struct SmithForm {
  IntMatrix u, v;
  std::vector<BigInt> diagonal;
  std::size_t rank() const {
    return static_cast<std::size_t>(std::count_if(diagonal.begin(), diagonal.end(), [](BigInt const& d) { return d != 0; }));
  }
};

inline IntMatrix int_identity(std::size_t n) {
  IntMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix int_mul(IntMatrix const& a, IntMatrix const& b) {
  std::size_t const rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  IntMatrix c(rows, std::vector<BigInt>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

/// Fraction-free Gaussian elimination; exact for square integer matrices.
inline BigInt bareiss_determinant(IntMatrix a) {
  std::size_t const n = a.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[r], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace detail {

inline BigInt floor_div(BigInt const& a, BigInt const& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// Checks U A V = D, the divisibility chain and det U, det V = +-1.
inline bool verify_smith(IntMatrix const& a, SmithForm const& s) {
  std::size_t const rows = a.size(), cols = rows == 0 ? 0 : a[0].size();
  if (s.u.size() != rows || s.v.size() != cols) return false;
  auto const d = int_mul(int_mul(s.u, a), s.v);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      BigInt const want = i == j ? s.diagonal[i] : BigInt(0);
      if (d[i][j] != want) return false;
    }
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
    if (s.diagonal[i] < 0) return false;
    if (i + 1 < s.diagonal.size()) {
      auto const& x = s.diagonal[i];
      auto const& y = s.diagonal[i + 1];
      if (x == 0 ? y != 0 : y % x != 0) return false;
    }
  }
  auto unit = [](BigInt const& det) { return det == 1 || det == -1; };
  return unit(bareiss_determinant(s.u)) && unit(bareiss_determinant(s.v));
}

/// Smith normal form with transforms. Every result is re-verified and a
/// failure raises InvariantViolation.
inline SmithForm smith_normal_form(IntMatrix const& input) {
  std::size_t const rows = input.size(), cols = rows == 0 ? 0 : input[0].size();
  for (auto const& row : input)
    if (row.size() != cols) throw DomainError("smith_normal_form: ragged matrix");
  IntMatrix a = input;
  IntMatrix u = int_identity(rows), v = int_identity(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : v) std::swap(r[i], r[j]);
  };
  // row_i -= q row_j
  auto add_row = [&](std::size_t i, std::size_t j, BigInt const& q) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] -= q * a[j][c];
    for (std::size_t c = 0; c < rows; ++c) u[i][c] -= q * u[j][c];
  };
  auto add_col = [&](std::size_t i, std::size_t j, BigInt const& q) {
    for (std::size_t r = 0; r < rows; ++r) a[r][i] -= q * a[r][j];
    for (std::size_t r = 0; r < cols; ++r) v[r][i] -= q * v[r][j];
  };

  std::size_t const steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        add_row(i, t, detail::floor_div(a[i][t], a[t][t]));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        add_col(j, t, detail::floor_div(a[t][j], a[t][t]));
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold an offending row into the pivot row and retry
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row(t, bad, BigInt(-1));
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }

  SmithForm s{std::move(u), std::move(v), {}};
  for (std::size_t i = 0; i < steps; ++i) s.diagonal.push_back(a[i][i]);
  if (!verify_smith(input, s)) throw InvariantViolation("smith_normal_form: verification failed");
  return s;
}

/// Columns of V spanning the integer kernel {x : A x = 0}.
inline IntMatrix integer_kernel(IntMatrix const& a, std::size_t cols) {
  if (a.empty()) return int_identity(cols);
  auto const s = smith_normal_form(a);
  std::size_t const r = s.rank();
  IntMatrix basis(cols, std::vector<BigInt>(cols - r, 0));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = r; j < cols; ++j) basis[i][j - r] = s.v[i][j];
  return basis;
}

}  // namespace galact
