#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <mutex>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "galact/error.hpp"
#include "galact/numtheory.hpp"
#include "galact/polynomial.hpp"

namespace galact {

/// Residue modulo the defining polynomial: coefficient vector of length m,
/// constant term first, every entry in [0, p).
struct FieldElement {
  std::vector<std::uint64_t> coeffs;

  bool operator==(FieldElement const&) const = default;

  /// Canonical order: by the integer sum(c_i p^i), i.e. compare from the
  /// top coefficient down.
  std::strong_ordering operator<=>(FieldElement const& o) const {
    if (coeffs.size() != o.coeffs.size()) return coeffs.size() <=> o.coeffs.size();
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      if (coeffs[i] != o.coeffs[i]) return coeffs[i] <=> o.coeffs[i];
    }
    return std::strong_ordering::equal;
  }

  /// True when every coefficient above the constant term vanishes.
  bool in_prime_field() const {
    return std::all_of(coeffs.begin() + (coeffs.empty() ? 0 : 1), coeffs.end(),
                       [](std::uint64_t c) { return c == 0; });
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(coeffs[i]);
    }
    return s + ")";
  }
};

/// The field E = F_p[x]/(modulus) of degree m over F_p, together with a
/// designated primitive n-th root of unity zeta.
///
/// Instances are immutable once built; build_splitting_field() produces the
/// canonical one for (p, n), parse() re-validates a serialized one.
class FieldSpec {
 public:
  using value_type = FieldElement;
  using Poly = std::vector<std::uint64_t>;

  static constexpr std::uint64_t kMaxPrime = 10000;
  static constexpr std::uint64_t kMaxRootOrder = 1000;

  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return m_; }
  Poly const& modulus() const noexcept { return modulus_; }
  FieldElement const& zeta() const noexcept { return zeta_; }
  std::uint64_t root_order() const noexcept { return n_; }
  PrimeField prime_field() const { return PrimeField(p_); }

  /// Number of elements, p^m.
  BigInt size() const {
    BigInt q = 1;
    for (unsigned i = 0; i < m_; ++i) q *= p_;
    return q;
  }

  FieldElement zero() const { return FieldElement{std::vector<std::uint64_t>(m_, 0)}; }
  FieldElement one() const {
    auto e = zero();
    e.coeffs[0] = 1 % p_;
    return e;
  }
  FieldElement from_int(std::uint64_t k) const {
    auto e = zero();
    e.coeffs[0] = k % p_;
    return e;
  }
  FieldElement from_signed(std::int64_t k) const {
    auto e = zero();
    e.coeffs[0] = PrimeField(p_).from_signed(k);
    return e;
  }

  /// Element whose base-p digits (constant term least significant) spell
  /// `index`; enumerates E in canonical order.
  FieldElement from_index(BigInt index) const {
    auto e = zero();
    for (unsigned i = 0; i < m_ && index != 0; ++i) {
      e.coeffs[i] = static_cast<std::uint64_t>(index % p_);
      index /= p_;
    }
    return e;
  }

  FieldElement add(FieldElement const& a, FieldElement const& b) const {
    FieldElement r = a;
    for (unsigned i = 0; i < m_; ++i) {
      auto s = r.coeffs[i] + b.coeffs[i];
      r.coeffs[i] = s >= p_ ? s - p_ : s;
    }
    return r;
  }
  FieldElement sub(FieldElement const& a, FieldElement const& b) const {
    FieldElement r = a;
    for (unsigned i = 0; i < m_; ++i) {
      r.coeffs[i] = a.coeffs[i] >= b.coeffs[i] ? a.coeffs[i] - b.coeffs[i] : a.coeffs[i] + p_ - b.coeffs[i];
    }
    return r;
  }
  FieldElement neg(FieldElement const& a) const { return sub(zero(), a); }

  FieldElement mul(FieldElement const& a, FieldElement const& b) const {
    if (m_ == 1) return FieldElement{{a.coeffs[0] * b.coeffs[0] % p_}};
    // p <= 10^4 and m <= 10^3 keep every partial sum below 2^64
    std::vector<std::uint64_t> r(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
      auto const ai = a.coeffs[i];
      if (ai == 0) continue;
      for (unsigned j = 0; j < m_; ++j) r[i + j] += ai * b.coeffs[j];
    }
    for (auto& v : r) v %= p_;
    // reduce with the monic modulus, top down
    for (std::size_t k = r.size() - 1; k >= m_; --k) {
      auto const t = r[k];
      if (t != 0) {
        for (unsigned i = 0; i < m_; ++i) {
          auto& slot = r[k - m_ + i];
          slot = (slot + (p_ - modulus_[i]) % p_ * t) % p_;
        }
      }
      r[k] = 0;
    }
    r.resize(m_);
    return FieldElement{std::move(r)};
  }

  FieldElement scale(FieldElement const& a, std::uint64_t c) const {
    FieldElement r = a;
    for (auto& v : r.coeffs) v = mulmod(v, c % p_, p_);
    return r;
  }

  FieldElement inv(FieldElement const& a) const {
    if (is_zero(a)) throw DomainError("FieldSpec: inverse of zero");
    PolyRing<PrimeField> ring{PrimeField(p_)};
    Poly av = a.coeffs;
    ring.trim(av);
    auto bz = ring.xgcd(av, modulus_);
    if (PolyRing<PrimeField>::deg(bz.g) != 0) throw InvariantViolation("FieldSpec: modulus not irreducible");
    return reduce_poly(bz.s);
  }

  bool is_zero(FieldElement const& a) const {
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](std::uint64_t c) { return c == 0; });
  }

  FieldElement pow(FieldElement base, std::uint64_t e) const {
    FieldElement r = one();
    while (e != 0) {
      if (e & 1U) r = mul(r, base);
      e >>= 1U;
      if (e != 0) base = mul(base, base);
    }
    return r;
  }

  FieldElement pow(FieldElement const& base, BigInt const& e) const {
    if (e == 0) return one();
    FieldElement r = one();
    auto const top = boost::multiprecision::msb(e);
    for (auto i = static_cast<long>(top); i >= 0; --i) {
      r = mul(r, r);
      if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) r = mul(r, base);
    }
    return r;
  }

  /// x -> x^p.
  FieldElement frobenius(FieldElement const& x) const { return pow(x, p_); }

  /// zeta_n^k for n | root_order(), as zeta^(k * root_order / n).
  FieldElement root_of_unity(std::int64_t k, std::uint64_t n) const {
    if (n == 0 || n_ % n != 0) throw DomainError("root_of_unity: order does not divide the root order of E");
    auto const kk = static_cast<std::uint64_t>(((k % static_cast<std::int64_t>(n)) + static_cast<std::int64_t>(n)) %
                                               static_cast<std::int64_t>(n));
    return pow(zeta_, kk * (n_ / n));
  }

  /// Multiplicative order of a nonzero element, which must divide root_order()
  /// (only used for elements of the designated root group).
  std::uint64_t root_element_order(FieldElement const& x) const {
    for (std::uint64_t d = 1; d <= n_; ++d) {
      if (n_ % d == 0 && pow(x, d) == one()) return d;
    }
    throw DomainError("element is not an n-th root of unity");
  }

  /// Degree over F_p of the subfield generated by `values`.
  template <class Range>
  unsigned generated_subfield_degree(Range const& values) const {
    for (unsigned k = 1; k <= m_; ++k) {
      if (m_ % k != 0) continue;
      bool fixed = true;
      for (auto const& v : values) {
        FieldElement w = v;
        for (unsigned i = 0; i < k; ++i) w = frobenius(w);
        if (!(w == v)) {
          fixed = false;
          break;
        }
      }
      if (fixed) return k;
    }
    return m_;
  }

  /// `p m modulus-coeffs zeta-coeffs n`, coefficient lists comma separated,
  /// constant term first.
  std::string serialize() const {
    std::ostringstream os;
    os << p_ << ' ' << m_ << ' ';
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    os << ' ';
    for (std::size_t i = 0; i < zeta_.coeffs.size(); ++i) os << (i ? "," : "") << zeta_.coeffs[i];
    os << ' ' << n_;
    return os.str();
  }

  static FieldSpec parse(std::string const& line);

  bool operator==(FieldSpec const&) const = default;

 private:
  friend FieldSpec build_splitting_field(std::uint64_t p, std::uint64_t n);

  FieldSpec(std::uint64_t p, unsigned m, Poly modulus)
      : p_(p), m_(m), modulus_(std::move(modulus)), zeta_{}, n_(1) {
    zeta_ = one();
  }

  FieldElement reduce_poly(Poly const& a) const {
    PolyRing<PrimeField> ring{PrimeField(p_)};
    auto r = ring.mod(a, modulus_);
    r.resize(m_, 0);
    return FieldElement{std::move(r)};
  }

  /// Throws unless zeta has order exactly n.
  void check_zeta() const {
    if (pow(zeta_, n_) != one()) throw DomainError("zeta^n != 1");
    for (auto q : prime_divisors(n_)) {
      if (pow(zeta_, n_ / q) == one()) throw DomainError("zeta has order smaller than n");
    }
  }

  std::uint64_t p_;
  unsigned m_;
  Poly modulus_;
  FieldElement zeta_;
  std::uint64_t n_;
};

static_assert(FiniteField<FieldSpec>);
static_assert(FiniteField<PrimeField>);

namespace detail {

inline void check_field_bounds(std::uint64_t p, std::uint64_t n) {
  if (!is_prime(p)) throw DomainError("characteristic is not prime");
  if (p > FieldSpec::kMaxPrime) throw DomainError("characteristic exceeds 10^4");
  if (n == 0 || n > FieldSpec::kMaxRootOrder) throw DomainError("root order must be in [1, 10^3]");
  if (std::gcd(p, n) != 1) throw DomainError("p must not divide n");
}

/// Lexicographically smallest monic irreducible of degree m over F_p: the
/// candidates are enumerated by sum(c_i p^i) over the non-leading coefficients.
inline std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, unsigned m) {
  PolyRing<PrimeField> ring{PrimeField(p)};
  std::vector<std::uint64_t> f(m + 1, 0);
  f[m] = 1;
  while (true) {
    if (is_irreducible(ring, f)) return f;
    unsigned i = 0;
    while (i < m && ++f[i] == p) f[i++] = 0;
    if (i == m) throw InvariantViolation("no irreducible polynomial found");
  }
}

/// Memoized smallest_irreducible; thread-safe.
inline std::vector<std::uint64_t> cached_irreducible(std::uint64_t p, unsigned m) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, std::vector<std::uint64_t>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({p, m}); it != cache.end()) return it->second;
  }
  auto f = smallest_irreducible(p, m);
  std::lock_guard lock(mu);
  cache.emplace(std::pair{p, m}, f);
  return f;
}

}  // namespace detail

/// F_p(zeta_n): degree m = ord_n(p), canonical modulus and canonical zeta
/// (the smallest element of multiplicative order exactly n).
inline FieldSpec build_splitting_field(std::uint64_t p, std::uint64_t n) {
  detail::check_field_bounds(p, n);
  unsigned const m = mult_order(p, n);
  FieldSpec spec(p, m, detail::cached_irreducible(p, m));
  BigInt const cofactor = (spec.size() - 1) / n;
  auto const primes = prime_divisors(n);
  auto has_order_n = [&](FieldElement const& y) {
    if (spec.pow(y, n) != spec.one()) return false;
    return std::none_of(primes.begin(), primes.end(), [&](std::uint64_t q) { return spec.pow(y, n / q) == spec.one(); });
  };
  FieldElement root;
  bool found = false;
  for (BigInt idx = 1; idx < spec.size(); ++idx) {
    auto y = spec.pow(spec.from_index(idx), cofactor);
    if (has_order_n(y)) {
      root = y;
      found = true;
      break;
    }
  }
  if (!found) throw InvariantViolation("no primitive root of unity found");
  FieldElement best = root;
  for (std::uint64_t k = 2; k <= n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    auto c = spec.pow(root, k);
    if (c < best) best = c;
  }
  spec.zeta_ = best;
  spec.n_ = n;
  spec.check_zeta();
  return spec;
}

/// x^p in E.
inline FieldElement frobenius_map(FieldElement const& x, FieldSpec const& spec) { return spec.frobenius(x); }

inline FieldSpec FieldSpec::parse(std::string const& line) {
  std::istringstream is(line);
  std::uint64_t p = 0, n = 0;
  unsigned m = 0;
  std::string mod_s, zeta_s;
  if (!(is >> p >> m >> mod_s >> zeta_s >> n)) throw ParseError("field line must read `p m modulus zeta n`");
  auto split = [](std::string const& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
    return out;
  };
  auto modulus = split(mod_s);
  auto zeta = split(zeta_s);
  detail::check_field_bounds(p, n);
  if (m == 0 || modulus.size() != m + 1 || zeta.size() != m || modulus.back() != 1) {
    throw ParseError("field line: coefficient list lengths do not match m");
  }
  for (auto c : modulus)
    if (c >= p) throw ParseError("field line: modulus coefficient not reduced");
  for (auto c : zeta)
    if (c >= p) throw ParseError("field line: zeta coefficient not reduced");
  if (!is_irreducible(PolyRing<PrimeField>{PrimeField(p)}, modulus)) throw DomainError("modulus is reducible");
  FieldSpec spec(p, m, std::move(modulus));
  if ((spec.size() - 1) % n != 0) throw DomainError("n does not divide p^m - 1");
  spec.zeta_ = FieldElement{std::move(zeta)};
  spec.n_ = n;
  spec.check_zeta();
  return spec;
}

}  // namespace galact
