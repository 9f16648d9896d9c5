#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "galact/error.hpp"
#include "galact/groups.hpp"
#include "galact/module_lab.hpp"
#include "galact/numtheory.hpp"
#include "galact/parallel.hpp"

namespace galact {

// ---------------------------------------------------------------------------
// Exhaustive scans over small cyclic-group actions

enum class ScanKind { Prop15, Prop16, Cor17 };

struct ScanBounds {
  std::uint64_t p = 3;        // prop15 only; prop16 and cor17 work at p = 2
  unsigned max_exponent = 4;  // per cyclic factor; prop15 default, the 2-group scans use 8
  unsigned max_total = 8;     // sum of exponents (two factors)
};

struct ScanReport {
  std::vector<std::string> lines;
  std::uint64_t extremal = 0;
  std::string witness;

  std::string text() const {
    std::string s;
    for (auto const& l : lines) s += l + '\n';
    return s + "EXTREMAL " + std::to_string(extremal) + " WITNESS " + witness + '\n';
  }
};

namespace detail {

/// Every well-defined endomorphism of b (rank <= 2), by odometer over the
/// admissible multiples in each entry.
template <class Visit>
void for_each_endo(AbelianPGroup const& b, Visit visit) {
  std::size_t const k = b.rank();
  std::vector<std::uint64_t> step(k * k), bound(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      unsigned const gap = b.exponents[i] > b.exponents[j] ? b.exponents[i] - b.exponents[j] : 0;
      step[i * k + j] = ipow(b.p, gap);
      bound[i * k + j] = b.modulus(i);
    }
  EndoMatrix m(k, ModVector(k, 0));
  while (true) {
    visit(m);
    std::size_t pos = 0;
    while (pos < k * k) {
      auto& v = m[pos / k][pos % k];
      v += step[pos];
      if (v < bound[pos]) break;
      v = 0;
      ++pos;
    }
    if (pos == k * k) return;
  }
}

inline bool squares_to_minus_one(AbelianPGroup const& b, EndoMatrix const& s) {
  auto const sq = compose(b, s, s);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j)
      if ((sq[i][j] + (i == j ? 1 : 0)) % b.modulus(i) != 0) return false;
  return true;
}

/// All elements of b in odometer order.
inline std::vector<ModVector> all_elements(AbelianPGroup const& b) {
  std::vector<ModVector> out;
  ModVector x(b.rank(), 0);
  while (true) {
    out.push_back(x);
    std::size_t pos = 0;
    while (pos < b.rank() && ++x[pos] == b.modulus(pos)) x[pos++] = 0;
    if (pos == b.rank()) return out;
  }
}

/// Largest order of a cyclic subgroup <x> with s(x) ∈ <x>.
inline std::uint64_t max_stable_cyclic(AbelianPGroup const& b, EndoMatrix const& s, std::vector<ModVector> const& elems) {
  std::uint64_t best = 1;
  for (auto const& x : elems) {
    auto const sx = apply(b, s, x);
    ModVector y(b.rank(), 0);
    std::uint64_t order = 0;
    bool stable = false;
    do {
      if (y == sx) stable = true;
      for (std::size_t i = 0; i < b.rank(); ++i) y[i] = (y[i] + x[i]) % b.modulus(i);
      ++order;
    } while (y != ModVector(b.rank(), 0));
    if (stable) best = std::max(best, order);
  }
  return best;
}

inline AbelianPGroup two_factor_base(std::uint64_t p, unsigned a, unsigned b) {
  AbelianPGroup base{p, {}};
  if (a > 0) base.exponents.push_back(a);
  if (b > 0) base.exponents.push_back(b);
  return base;
}

}  // namespace detail

/// prop15: C_p acting on Z/p^e with 1 + σ + ... + σ^{p-1} = 0;
/// prop16: C_4 acting on Z/2^a ⊕ Z/2^b with 1 + σ² = 0, largest σ-stable
/// cyclic subgroup; cor17: largest a - b for which such an action exists.
inline ScanReport cyclic_scan(ScanKind kind, ScanBounds const& bounds, unsigned jobs = 1) {
  if (bounds.max_exponent > 8 || bounds.max_total > 8) throw DomainError("cyclic_scan: bounds exceeded (exponents and total <= 8)");
  ScanReport rep;
  if (kind == ScanKind::Prop15) {
    std::uint64_t const p = bounds.p;
    if (p > 5 || p == 2 || !is_prime(p)) throw DomainError("cyclic_scan: prop15 needs an odd prime p <= 5");
    auto const cp = build_group(FamilySpec::cyclic(static_cast<unsigned>(p)));
    rep.extremal = 1;
    rep.witness = "trivial";
    for (unsigned e = 1; e <= bounds.max_exponent; ++e) {
      std::uint64_t const mod = ipow(p, e);
      std::size_t actions = 0, valid = 0;
      std::uint64_t first_valid = 0;
      for (std::uint64_t u = 1; u < mod; ++u) {
        if (u % p == 0 || powmod(u, p, mod) != 1) continue;
        ++actions;
        std::uint64_t norm = 0, pw = 1;
        for (std::uint64_t i = 0; i < p; ++i) {
          norm = (norm + pw) % mod;
          pw = mulmod(pw, u, mod);
        }
        if (norm == 0) {
          if (valid++ == 0) first_valid = u;
        }
      }
      rep.lines.push_back("prop15 p=" + std::to_string(p) + " module=Z/" + std::to_string(mod) +
                          " actions=" + std::to_string(actions) + " valid=" + std::to_string(valid));
      if (valid > 0 && mod > rep.extremal) {
        rep.extremal = mod;
        rep.witness = make_module(AbelianPGroup{p, {e}}, cp, {1}, {{{first_valid}}}).serialize({1});
      }
    }
    return rep;
  }

  std::vector<std::pair<unsigned, unsigned>> shapes;
  for (unsigned a = 1; a <= bounds.max_exponent; ++a)
    for (unsigned b = 0; b <= a && a + b <= bounds.max_total; ++b) shapes.emplace_back(a, b);
  auto const c4 = build_group(FamilySpec::cyclic(4));

  struct ShapeResult {
    std::size_t valid = 0;
    std::uint64_t value = 0;
    EndoMatrix witness;
  };
  auto const results = parallel_map(shapes.size(), jobs, [&](std::size_t idx) {
    auto const [a, b] = shapes[idx];
    auto const base = detail::two_factor_base(2, a, b);
    ShapeResult r;
    auto const elems = kind == ScanKind::Prop16 ? detail::all_elements(base) : std::vector<ModVector>{};
    detail::for_each_endo(base, [&](EndoMatrix const& s) {
      if (!detail::squares_to_minus_one(base, s)) return;
      if (r.valid++ == 0 && kind == ScanKind::Cor17) r.witness = s;
      if (kind == ScanKind::Prop16) {
        auto const v = detail::max_stable_cyclic(base, s, elems);
        if (v > r.value) {
          r.value = v;
          r.witness = s;
        }
      }
    });
    return r;
  });

  bool have = false;
  for (std::size_t idx = 0; idx < shapes.size(); ++idx) {
    auto const [a, b] = shapes[idx];
    auto const& r = results[idx];
    auto const base = detail::two_factor_base(2, a, b);
    std::ostringstream line;
    if (kind == ScanKind::Prop16) {
      line << "prop16 module=" << base.str() << " actions=" << r.valid << " max_stable_cyclic=" << r.value;
    } else {
      line << "cor17 alpha=" << a << " beta=" << b << " actions=" << r.valid;
    }
    rep.lines.push_back(line.str());
    if (r.valid == 0) continue;
    std::uint64_t const v = kind == ScanKind::Prop16 ? r.value : a - b;
    if (!have || v > rep.extremal) {
      have = true;
      rep.extremal = v;
      rep.witness = make_module(base, c4, {1}, {r.witness}).serialize({1});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Seeded random module generators

using Rng = std::mt19937_64;

inline std::uint64_t draw(Rng& rng, std::uint64_t n) { return rng() % n; }

inline std::uint64_t inverse_mod_prime_power(std::uint64_t u, std::uint64_t p, unsigned e) {
  std::uint64_t const mod = ipow(p, e);
  std::uint64_t const phi = mod / p * (p - 1);
  return powmod(u, phi - 1, mod);
}

/// Random automorphism P of b with its inverse, as a product of
/// transvections and unit scalings.
inline std::pair<EndoMatrix, EndoMatrix> random_automorphism(AbelianPGroup const& b, Rng& rng, unsigned steps = 8) {
  auto pm = identity_endo(b), pinv = identity_endo(b);
  std::size_t const k = b.rank();
  if (k == 0) return {pm, pinv};
  for (unsigned s = 0; s < steps; ++s) {
    auto e = identity_endo(b), einv = identity_endo(b);
    std::size_t const i = draw(rng, k), j = draw(rng, k);
    if (i == j) {
      std::uint64_t u = 0;
      while (u % b.p == 0) u = draw(rng, b.modulus(i));
      e[i][i] = u;
      einv[i][i] = inverse_mod_prime_power(u, b.p, b.exponents[i]);
    } else {
      unsigned const gap = b.exponents[i] > b.exponents[j] ? b.exponents[i] - b.exponents[j] : 0;
      std::uint64_t const unit = ipow(b.p, gap), mod = b.modulus(i);
      std::uint64_t const c = draw(rng, mod / unit) * unit;
      e[i][j] = c;
      einv[i][j] = (mod - c) % mod;
    }
    pm = compose(b, e, pm);
    pinv = compose(b, pinv, einv);
  }
  return {pm, pinv};
}

inline EndoMatrix conjugate(AbelianPGroup const& b, std::pair<EndoMatrix, EndoMatrix> const& p, EndoMatrix const& a) {
  return compose(b, compose(b, p.first, a), p.second);
}

inline AbelianPGroup random_base(std::uint64_t p, Rng& rng, unsigned max_rank, unsigned max_exponent) {
  AbelianPGroup b{p, {}};
  std::size_t const k = 1 + draw(rng, max_rank);
  for (std::size_t i = 0; i < k; ++i) b.exponents.push_back(static_cast<unsigned>(1 + draw(rng, max_exponent)));
  std::sort(b.exponents.rbegin(), b.exponents.rend());
  return b;
}

/// V4-module with vanishing norm: each coordinate carries one of the three
/// nontrivial characters, then everything is conjugated by a random
/// automorphism.
inline GModule random_v4_module(std::uint64_t p, Rng& rng, unsigned max_rank = 3, unsigned max_exponent = 3) {
  auto const v4 = build_group(FamilySpec::klein_four());
  auto const b = random_base(p, rng, max_rank, max_exponent);
  EndoMatrix s1 = zero_endo(b), s2 = zero_endo(b);
  for (std::size_t i = 0; i < b.rank(); ++i) {
    unsigned const chi = static_cast<unsigned>(1 + draw(rng, 3));
    auto const minus = b.modulus(i) - 1;
    s1[i][i] = (chi & 1U) ? minus : 1;
    s2[i][i] = (chi & 2U) ? minus : 1;
  }
  auto const pm = random_automorphism(b, rng);
  return make_module(b, v4, {1, 2}, {conjugate(b, pm, s1), conjugate(b, pm, s2)});
}

/// C_q acting on a p-group through q-th roots of unity per coordinate
/// (Hensel lifts included), conjugated randomly.
inline GModule random_cyclic_module(unsigned q, std::uint64_t p, Rng& rng, unsigned max_rank = 3, unsigned max_exponent = 3) {
  auto const cq = build_group(FamilySpec::cyclic(q));
  auto const b = random_base(p, rng, max_rank, max_exponent);
  EndoMatrix s = zero_endo(b);
  for (std::size_t i = 0; i < b.rank(); ++i) {
    auto const mod = b.modulus(i);
    std::vector<std::uint64_t> roots;
    for (std::uint64_t u = 1; u < mod; ++u)
      if (u % p != 0 && powmod(u, q, mod) == 1) roots.push_back(u);
    s[i][i] = roots[draw(rng, roots.size())];
  }
  auto const pm = random_automorphism(b, rng);
  return make_module(b, cq, {1}, {conjugate(b, pm, s)});
}

/// Traces t with x² - t x + 1 the minimal polynomial of a rotation of exact
/// order n over F_p whose rotation norm vanishes.
inline std::vector<std::uint64_t> dihedral_traces(unsigned n, std::uint64_t p) {
  AbelianPGroup const b{p, {1, 1}};
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = 0; t < p; ++t) {
    EndoMatrix c{{0, p - 1}, {1, t}};
    auto pw = identity_endo(b), sum = zero_endo(b);
    bool exact = true;
    for (unsigned i = 0; i < n; ++i) {
      if (i > 0 && pw == identity_endo(b)) exact = false;
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t col = 0; col < 2; ++col) sum[r][col] = (sum[r][col] + pw[r][col]) % p;
      pw = compose(b, pw, c);
    }
    if (exact && pw == identity_endo(b) && sum == zero_endo(b)) out.push_back(t);
  }
  return out;
}

struct DihedralInstance {
  GModule module;
  std::vector<ModVector> a_generators;
};

/// Direct sum of `copies` 2-dimensional D_n-modules over F_p with rotation
/// the companion of x² - t x + 1 and reflection swapping coordinates,
/// conjugated randomly; A is spanned by random τ-fixed vectors.
inline DihedralInstance random_dihedral_instance(unsigned n, std::uint64_t p, Rng& rng, unsigned max_copies = 3) {
  auto const dn = build_group(FamilySpec::dihedral(n));
  auto const traces = dihedral_traces(n, p);
  if (traces.empty()) throw DomainError("random_dihedral_instance: no 2-dimensional rotation over F_p");
  std::size_t const copies = 1 + draw(rng, max_copies);
  AbelianPGroup const b{p, std::vector<unsigned>(2 * copies, 1)};
  EndoMatrix sigma = zero_endo(b), tau = zero_endo(b);
  for (std::size_t c = 0; c < copies; ++c) {
    auto const t = traces[draw(rng, traces.size())];
    std::size_t const o = 2 * c;
    sigma[o][o] = 0;
    sigma[o][o + 1] = p - 1;
    sigma[o + 1][o] = 1;
    sigma[o + 1][o + 1] = t;
    tau[o][o + 1] = 1;
    tau[o + 1][o] = 1;
  }
  auto const pm = random_automorphism(b, rng, 12);
  auto module = make_module(b, dn, {1, static_cast<Element>(n)}, {conjugate(b, pm, sigma), conjugate(b, pm, tau)});
  std::vector<ModVector> gens;
  std::size_t const dim_a = draw(rng, copies + 1);
  for (std::size_t g = 0; g < dim_a; ++g) {
    ModVector v(b.rank(), 0);
    for (std::size_t c = 0; c < copies; ++c) v[2 * c] = v[2 * c + 1] = draw(rng, p);
    gens.push_back(apply(b, pm.first, v));
  }
  return {std::move(module), std::move(gens)};
}

struct MaschkeInstance {
  GModule module;
  std::vector<ModVector> sub;
};

/// Regular representation of a small group over F_p, conjugated randomly;
/// sub is the span of the orbits of one or two random vectors.
inline MaschkeInstance random_maschke_instance(Rng& rng) {
  static std::vector<FamilySpec> const groups{FamilySpec::cyclic(2), FamilySpec::cyclic(3), FamilySpec::cyclic(4),
                                              FamilySpec::klein_four(), FamilySpec::dihedral(3), FamilySpec::cyclic(5)};
  static std::vector<std::uint64_t> const primes{3, 5, 7, 11};
  auto const spec = groups[draw(rng, groups.size())];
  auto const g = build_group(spec);
  std::uint64_t p = 0;
  do p = primes[draw(rng, primes.size())];
  while (g.order() % p == 0);
  AbelianPGroup const b{p, std::vector<unsigned>(g.order(), 1)};
  auto const pm = random_automorphism(b, rng, 3 * g.order());
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), Element{0});
  std::vector<EndoMatrix> imgs;
  for (Element x = 0; x < g.order(); ++x) {
    EndoMatrix perm = zero_endo(b);
    for (Element y = 0; y < g.order(); ++y) perm[g.mul(x, y)][y] = 1;
    imgs.push_back(conjugate(b, pm, perm));
  }
  auto module = make_module(b, g, all, imgs);
  std::vector<ModVector> sub;
  std::size_t const seeds = 1 + draw(rng, 2);
  for (std::size_t s = 0; s < seeds; ++s) {
    ModVector v(b.rank());
    for (auto& c : v) c = draw(rng, p);
    for (Element x = 0; x < g.order(); ++x) sub.push_back(apply(b, module.action[x], v));
  }
  return {std::move(module), std::move(sub)};
}

}  // namespace galact
