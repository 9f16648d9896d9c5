#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "galact/error.hpp"
#include "galact/polynomial.hpp"

namespace galact {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <FiniteField F>
Matrix<typename F::value_type> zero_matrix(F const& f, std::size_t rows, std::size_t cols) {
  return Matrix<typename F::value_type>(rows, std::vector<typename F::value_type>(cols, f.zero()));
}

template <FiniteField F>
Matrix<typename F::value_type> identity_matrix(F const& f, std::size_t n) {
  auto m = zero_matrix(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = f.one();
  return m;
}

template <FiniteField F>
Matrix<typename F::value_type> mat_mul(F const& f, Matrix<typename F::value_type> const& a,
                                       Matrix<typename F::value_type> const& b) {
  std::size_t const rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  auto c = zero_matrix(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (f.is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] = f.add(c[i][j], f.mul(a[i][k], b[k][j]));
    }
  return c;
}

/// In-place reduced row echelon form; returns the pivot columns.
template <FiniteField F>
std::vector<std::size_t> rref(F const& f, Matrix<typename F::value_type>& a) {
  std::vector<std::size_t> pivots;
  std::size_t const rows = a.size();
  std::size_t const cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && f.is_zero(a[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    auto const inv = f.inv(a[r][c]);
    for (auto& v : a[r]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(a[i][c])) continue;
      auto const factor = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(factor, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <FiniteField F>
std::size_t rank(F const& f, Matrix<typename F::value_type> a) {
  return rref(f, a).size();
}

/// Basis of {v : a v = 0}, one vector per free column.
template <FiniteField F>
std::vector<std::vector<typename F::value_type>> nullspace(F const& f, Matrix<typename F::value_type> a,
                                                           std::size_t cols) {
  auto const pivots = rref(f, a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::value_type>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::value_type> v(cols, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(a[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial det(xI - a) via reduction to Hessenberg form.
template <FiniteField F>
std::vector<typename F::value_type> char_poly(F const& f, Matrix<typename F::value_type> h) {
  using T = typename F::value_type;
  std::size_t const n = h.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && f.is_zero(h[i][m - 1])) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (auto& row : h) std::swap(row[i], row[m]);
    }
    auto const t_inv = f.inv(h[m][m - 1]);
    for (std::size_t r = m + 1; r < n; ++r) {
      if (f.is_zero(h[r][m - 1])) continue;
      auto const u = f.mul(h[r][m - 1], t_inv);
      for (std::size_t j = 0; j < n; ++j) h[r][j] = f.sub(h[r][j], f.mul(u, h[m][j]));
      for (std::size_t j = 0; j < n; ++j) h[j][m] = f.add(h[j][m], f.mul(u, h[j][r]));
    }
  }
  PolyRing<F> ring(f);
  std::vector<std::vector<T>> p(n + 1);
  p[0] = {f.one()};
  for (std::size_t k = 1; k <= n; ++k) {
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_{ik} (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}   (1-indexed)
    auto acc = ring.mul(std::vector<T>{f.neg(h[k - 1][k - 1]), f.one()}, p[k - 1]);
    T prod = f.one();
    for (std::size_t i = k - 1; i >= 1; --i) {
      prod = f.mul(prod, h[i][i - 1]);
      if (f.is_zero(prod)) break;
      auto const coef = f.mul(h[i - 1][k - 1], prod);
      acc = ring.sub(acc, ring.scale(p[i - 1], coef));
    }
    p[k] = std::move(acc);
  }
  return p[n];
}

/// Element x in the polynomial basis of an extension (coefficient 1 at x^1);
/// for prime fields just one. Used to draw uniformly random field elements.
template <FiniteField F>
typename F::value_type generator_hint(F const& f) {
  if constexpr (requires { f.from_index(BigInt(0)); }) {
    return f.degree() > 1 ? f.from_index(BigInt(f.characteristic())) : f.one();
  } else {
    return f.one();
  }
}

/// Distinct roots of a nonzero polynomial that splits into linear factors
/// over F: radical via gcd(f, x^q - x), then trace splitting. Deterministic
/// for a given input. Roots come back sorted only if T is ordered and the
/// caller sorts them.
template <FiniteField F>
std::vector<typename F::value_type> split_roots(F const& f, std::vector<typename F::value_type> poly) {
  using T = typename F::value_type;
  using Poly = std::vector<T>;
  PolyRing<F> ring(f);
  poly = ring.monic(poly);
  if (poly.empty()) throw DomainError("split_roots: zero polynomial");
  if (PolyRing<F>::deg(poly) == 0) return {};
  auto const x = ring.x();
  auto const xq = ring.frobenius_power(x, f.degree(), poly);
  Poly rad = ring.gcd(poly, ring.sub(xq, x));
  std::uint64_t const p = f.characteristic();

  std::vector<T> roots;
  std::vector<Poly> work{rad};
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uint64_t attempts = 0;
  while (!work.empty()) {
    Poly g = std::move(work.back());
    work.pop_back();
    int const d = PolyRing<F>::deg(g);
    if (d <= 0) continue;
    if (d == 1) {
      roots.push_back(f.neg(g[0]));
      continue;
    }
    if (++attempts > 10000) throw InvariantViolation("split_roots: failed to split");
    // beta: x itself on the first try over F_p, random multiples otherwise
    T beta = f.one();
    if (attempts > 1 || f.degree() > 1) {
      do {
        beta = f.zero();
        T pw = f.one();
        for (unsigned i = 0; i < f.degree(); ++i) {
          beta = f.add(beta, f.mul(pw, f.from_int(rng() % p)));
          if (f.degree() > 1) pw = f.mul(pw, generator_hint(f));
        }
      } while (f.is_zero(beta));
    }
    Poly u = ring.mod(Poly{f.zero(), beta}, g);
    Poly trace = u;
    for (unsigned i = 1; i < f.degree(); ++i) {
      u = ring.powmod(u, p, g);
      trace = ring.add(trace, u);
    }
    std::vector<Poly> parts;
    int covered = 0;
    for (std::uint64_t c = 0; c < p && covered < d; ++c) {
      auto h = ring.gcd(g, ring.sub(trace, ring.constant(f.from_int(c))));
      int const dh = PolyRing<F>::deg(h);
      if (dh > 0) {
        covered += dh;
        parts.push_back(std::move(h));
      }
    }
    if (parts.size() <= 1) {
      work.push_back(std::move(g));
      continue;
    }
    for (auto& part : parts) work.push_back(std::move(part));
  }
  return roots;
}

}  // namespace galact
