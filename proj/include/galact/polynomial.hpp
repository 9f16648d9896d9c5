#pragma once

#include <concepts>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "galact/error.hpp"
#include "galact/numtheory.hpp"

namespace galact {

using BigInt = boost::multiprecision::cpp_int;

/// What the polynomial and linear-algebra templates need from a finite field.
template <class F>
concept FiniteField = requires(F const& f, typename F::value_type const& a,
                               typename F::value_type const& b, std::uint64_t k) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(k) } -> std::same_as<typename F::value_type>;
  { f.add(a, b) } -> std::same_as<typename F::value_type>;
  { f.sub(a, b) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, b) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { f.characteristic() } -> std::convertible_to<std::uint64_t>;
  { f.degree() } -> std::convertible_to<unsigned>;
};

/// The prime field Z/p.
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw DomainError("PrimeField: modulus is not prime");
  }

  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return 1; }

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1 % p_; }
  value_type from_int(std::uint64_t k) const noexcept { return k % p_; }
  value_type from_signed(std::int64_t k) const noexcept {
    auto r = k % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  value_type add(value_type a, value_type b) const noexcept {
    auto s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept { return p_ < (1ULL << 32) ? a * b % p_ : mulmod(a, b, p_); }
  value_type inv(value_type a) const {
    if (a % p_ == 0) throw DomainError("PrimeField: inverse of zero");
    return powmod(a, p_ - 2, p_);
  }
  bool is_zero(value_type a) const noexcept { return a == 0; }

 private:
  std::uint64_t p_;
};

/// Dense univariate polynomials over a finite field, lowest coefficient
/// first. The zero polynomial is the empty vector; results are always trimmed.
template <FiniteField F>
class PolyRing {
 public:
  using T = typename F::value_type;
  using Poly = std::vector<T>;

  explicit PolyRing(F const& field) : f_(field) {}

  F const& field() const noexcept { return f_; }

  static int deg(Poly const& a) noexcept { return static_cast<int>(a.size()) - 1; }

  void trim(Poly& a) const {
    while (!a.empty() && f_.is_zero(a.back())) a.pop_back();
  }

  Poly x() const { return Poly{f_.zero(), f_.one()}; }
  Poly constant(T const& c) const {
    Poly r{c};
    trim(r);
    return r;
  }

  Poly add(Poly const& a, Poly const& b) const {
    Poly r(std::max(a.size(), b.size()), f_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = f_.add(r[i], b[i]);
    trim(r);
    return r;
  }

  Poly sub(Poly const& a, Poly const& b) const {
    Poly r(std::max(a.size(), b.size()), f_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = f_.sub(r[i], b[i]);
    trim(r);
    return r;
  }

  Poly scale(Poly const& a, T const& c) const {
    Poly r;
    r.reserve(a.size());
    for (auto const& v : a) r.push_back(f_.mul(v, c));
    trim(r);
    return r;
  }

  Poly mul(Poly const& a, Poly const& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, f_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (f_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        r[i + j] = f_.add(r[i + j], f_.mul(a[i], b[j]));
      }
    }
    trim(r);
    return r;
  }

  std::pair<Poly, Poly> divmod(Poly a, Poly const& b) const {
    if (b.empty()) throw DomainError("polynomial division by zero");
    trim(a);
    if (a.size() < b.size()) return {Poly{}, a};
    Poly q(a.size() - b.size() + 1, f_.zero());
    T const lead_inv = b.back() == f_.one() ? f_.one() : f_.inv(b.back());
    for (int k = deg(a) - deg(b); k >= 0; --k) {
      T const c = f_.mul(a[k + b.size() - 1], lead_inv);
      q[k] = c;
      if (f_.is_zero(c)) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        a[k + j] = f_.sub(a[k + j], f_.mul(c, b[j]));
      }
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {q, a};
  }

  Poly mod(Poly const& a, Poly const& b) const { return divmod(a, b).second; }

  Poly monic(Poly a) const {
    trim(a);
    if (a.empty()) return a;
    return scale(a, f_.inv(a.back()));
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      auto r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  struct Bezout {
    Poly g, s, t;  // s*a + t*b = g, g monic
  };

  Bezout xgcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    Poly s0{f_.one()}, s1{}, t0{}, t1{f_.one()};
    while (!b.empty()) {
      auto [q, r] = divmod(a, b);
      a = std::move(b);
      b = std::move(r);
      auto s2 = sub(s0, mul(q, s1));
      auto t2 = sub(t0, mul(q, t1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (a.empty()) return {a, s0, t0};
    T const li = f_.inv(a.back());
    return {scale(a, li), scale(s0, li), scale(t0, li)};
  }

  Poly mulmod(Poly const& a, Poly const& b, Poly const& m) const { return mod(mul(a, b), m); }

  Poly powmod(Poly base, std::uint64_t e, Poly const& m) const {
    Poly r = mod(Poly{f_.one()}, m);
    base = mod(base, m);
    while (e != 0) {
      if (e & 1U) r = mulmod(r, base, m);
      e >>= 1U;
      if (e != 0) base = mulmod(base, base, m);
    }
    return r;
  }

  T eval(Poly const& a, T const& v) const {
    T acc = f_.zero();
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = f_.add(f_.mul(acc, v), *it);
    return acc;
  }

  /// a(x)^(p^k) mod m, by k successive p-th powers.
  Poly frobenius_power(Poly a, unsigned k, Poly const& m) const {
    for (unsigned i = 0; i < k; ++i) a = powmod(a, f_.characteristic(), m);
    return a;
  }

 private:
  F f_;
};

/// Rabin's irreducibility test for a monic polynomial over F_p.
inline bool is_irreducible(PolyRing<PrimeField> const& ring, std::vector<std::uint64_t> f) {
  ring.trim(f);
  int const m = PolyRing<PrimeField>::deg(f);
  if (m < 1) return false;
  if (m == 1) return true;
  if (f[0] == 0) return false;
  // Ben-Or: no factor of degree i <= m/2, i.e. gcd(f, x^{p^i} - x) = 1
  auto const x = ring.mod(ring.x(), f);
  auto h = x;
  for (int i = 1; 2 * i <= m; ++i) {
    h = ring.powmod(h, ring.field().characteristic(), f);
    if (PolyRing<PrimeField>::deg(ring.gcd(f, ring.sub(h, x))) != 0) return false;
  }
  return true;
}

}  // namespace galact
