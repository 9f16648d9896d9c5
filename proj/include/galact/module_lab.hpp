#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "galact/error.hpp"
#include "galact/groups.hpp"
#include "galact/linalg.hpp"
#include "galact/numtheory.hpp"
#include "galact/polynomial.hpp"
#include "galact/smith.hpp"

namespace galact {

/// ⊕ Z/p^{e_i} with e_1 >= e_2 >= ... >= 1.
struct AbelianPGroup {
  std::uint64_t p = 2;
  std::vector<unsigned> exponents;

  static constexpr std::uint64_t kMaxModulus = 1ULL << 40;

  void validate() const {
    if (!is_prime(p)) throw DomainError("AbelianPGroup: p is not prime");
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (exponents[i] == 0) throw DomainError("AbelianPGroup: exponents must be positive");
      if (i > 0 && exponents[i] > exponents[i - 1]) throw DomainError("AbelianPGroup: exponents must be non-increasing");
    }
    if (!exponents.empty()) {
      BigInt top = 1;
      for (unsigned k = 0; k < exponents.front(); ++k) top *= p;
      if (top > kMaxModulus) throw DomainError("AbelianPGroup: p^e exceeds 2^40");
    }
  }
  std::size_t rank() const noexcept { return exponents.size(); }
  std::uint64_t modulus(std::size_t i) const { return ipow(p, exponents[i]); }
  BigInt order() const {
    BigInt r = 1;
    for (auto e : exponents)
      for (unsigned k = 0; k < e; ++k) r *= p;
    return r;
  }
  /// e.g. "Z/9+Z/3"; the trivial group prints as "0".
  std::string str() const {
    if (exponents.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < exponents.size(); ++i) s += (i ? "+Z/" : "Z/") + std::to_string(modulus(i));
    return s;
  }
  bool operator==(AbelianPGroup const&) const = default;
};

/// Column j holds the image of generator j; entry (i, j) lives in Z/p^{e_i}.
using EndoMatrix = std::vector<std::vector<std::uint64_t>>;
using ModVector = std::vector<std::uint64_t>;

/// Integer coefficient per group element.
struct RingElement {
  std::vector<std::int64_t> coeffs;

  static RingElement zero(Group const& g) { return {std::vector<std::int64_t>(g.order(), 0)}; }
  static RingElement element(Group const& g, Element x, std::int64_t c = 1) {
    auto r = zero(g);
    r.coeffs[x] = c;
    return r;
  }
  /// sum of the members of h
  static RingElement norm(Group const& g, Subgroup const& h) {
    auto r = zero(g);
    for (auto x : h.members) r.coeffs[x] = 1;
    return r;
  }
  RingElement operator+(RingElement const& o) const {
    RingElement r = *this;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
    return r;
  }
};

class ModuleError : public DomainError {
 public:
  enum class Kind { NotEndomorphism, NotInvertible, RelationViolation, Hypothesis };
  ModuleError(Kind k, std::string const& what) : DomainError(what), kind_(k) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

inline std::uint64_t mod_signed(std::int64_t v, std::uint64_t m) {
  auto const r = v % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

inline std::uint64_t mod_big(BigInt v, std::uint64_t m) {
  v %= m;
  if (v < 0) v += m;
  return static_cast<std::uint64_t>(v);
}

inline IntMatrix to_int_matrix(EndoMatrix const& m) {
  IntMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto v : m[i]) out[i].push_back(BigInt(v));
  return out;
}

}  // namespace detail

/// Hom src -> dst given by a dst.rank x src.rank matrix is well defined iff
/// p^{max(0, e'_i - e_j)} divides entry (i, j).
inline bool hom_well_defined(AbelianPGroup const& src, AbelianPGroup const& dst, EndoMatrix const& m) {
  if (m.size() != dst.rank()) return false;
  for (std::size_t i = 0; i < dst.rank(); ++i) {
    if (m[i].size() != src.rank()) return false;
    for (std::size_t j = 0; j < src.rank(); ++j) {
      if (m[i][j] >= dst.modulus(i)) return false;
      if (dst.exponents[i] > src.exponents[j] && m[i][j] % ipow(dst.p, dst.exponents[i] - src.exponents[j]) != 0) return false;
    }
  }
  return true;
}

inline EndoMatrix identity_endo(AbelianPGroup const& b) {
  EndoMatrix m(b.rank(), ModVector(b.rank(), 0));
  for (std::size_t i = 0; i < b.rank(); ++i) m[i][i] = 1;
  return m;
}

inline EndoMatrix zero_endo(AbelianPGroup const& b) { return EndoMatrix(b.rank(), ModVector(b.rank(), 0)); }

/// Reduce arbitrary integer entries row-wise modulo p^{e_i}.
inline EndoMatrix reduce_endo(AbelianPGroup const& b, std::vector<std::vector<std::int64_t>> const& m) {
  EndoMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto v : m[i]) out[i].push_back(detail::mod_signed(v, b.modulus(i)));
  return out;
}

/// a∘b; the result rows live in dst of a.
inline EndoMatrix compose(AbelianPGroup const& dst, EndoMatrix const& a, EndoMatrix const& b) {
  std::size_t const rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  EndoMatrix c(rows, ModVector(cols, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    auto const m = dst.modulus(i);
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j) c[i][j] = (c[i][j] + mulmod(a[i][k], b[k][j], m)) % m;
  }
  return c;
}

inline ModVector apply(AbelianPGroup const& dst, EndoMatrix const& a, ModVector const& x) {
  ModVector y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto const m = dst.modulus(i);
    for (std::size_t j = 0; j < x.size(); ++j) y[i] = (y[i] + mulmod(a[i][j], x[j], m)) % m;
  }
  return y;
}

/// An endomorphism of a finite p-group is bijective iff it is onto modulo p.
inline bool is_automorphism(AbelianPGroup const& b, EndoMatrix const& m) {
  PrimeField f(b.p);
  Matrix<std::uint64_t> red(b.rank(), std::vector<std::uint64_t>(b.rank()));
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) red[i][j] = m[i][j] % b.p;
  return rank(f, red) == b.rank();
}

/// Invariant factors (largest first, 1s dropped) of a finite abelian group.
using Invariants = std::vector<std::uint64_t>;

inline BigInt invariants_order(Invariants const& inv) {
  BigInt r = 1;
  for (auto d : inv) r *= d;
  return r;
}

inline std::size_t p_rank(Invariants const& inv, std::uint64_t p) {
  return static_cast<std::size_t>(std::count_if(inv.begin(), inv.end(), [&](std::uint64_t d) { return d % p == 0; }));
}

inline std::string invariants_str(Invariants const& inv) {
  if (inv.empty()) return "[1]";
  std::string s = "[";
  for (std::size_t i = 0; i < inv.size(); ++i) s += (i ? "," : "") + std::to_string(inv[i]);
  return s + "]";
}

/// Integer lattice of relations {y : G y ∈ D Z^k} among the columns of G in b.
inline IntMatrix relation_lattice(AbelianPGroup const& b, EndoMatrix const& gens) {
  std::size_t const k = b.rank();
  std::size_t const r = gens.empty() ? 0 : gens[0].size();
  IntMatrix big(k, std::vector<BigInt>(r + k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < r; ++j) big[i][j] = gens[i][j];
    big[i][r + i] = -BigInt(b.modulus(i));
  }
  auto const ker = integer_kernel(big, r + k);
  IntMatrix rel(r, std::vector<BigInt>(ker.empty() ? 0 : ker[0].size()));
  for (std::size_t i = 0; i < r; ++i) rel[i] = ker[i];
  return rel;
}

/// Structure of the subgroup generated by the columns of gens.
inline Invariants subgroup_invariants(AbelianPGroup const& b, EndoMatrix const& gens) {
  std::size_t const r = gens.empty() ? 0 : gens[0].size();
  if (r == 0 || b.rank() == 0) return {};
  auto const rel = relation_lattice(b, gens);
  auto const s = smith_normal_form(rel);
  if (s.rank() != r) throw InvariantViolation("subgroup_invariants: relation lattice not of full rank");
  Invariants out;
  for (std::size_t i = 0; i < r; ++i)
    if (s.diagonal[i] != 1) out.push_back(static_cast<std::uint64_t>(s.diagonal[i]));
  std::sort(out.rbegin(), out.rend());
  return out;
}

/// Generators (columns, reduced into src) of the kernel of m : src -> dst.
inline EndoMatrix kernel_generators(AbelianPGroup const& src, AbelianPGroup const& dst, EndoMatrix const& m) {
  std::size_t const k = src.rank(), l = dst.rank();
  if (k == 0) return EndoMatrix{};
  if (l == 0) return identity_endo(src);
  IntMatrix big(l, std::vector<BigInt>(k + l, 0));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < k; ++j) big[i][j] = m[i][j];
    big[i][k + i] = -BigInt(dst.modulus(i));
  }
  auto const ker = integer_kernel(big, k + l);
  std::size_t const t = ker.empty() ? 0 : ker[0].size();
  EndoMatrix gens(k, ModVector(t, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < t; ++j) gens[i][j] = detail::mod_big(ker[i][j], src.modulus(i));
  return gens;
}

/// Stacks matrices vertically; the target group is the matching direct sum.
inline std::pair<AbelianPGroup, EndoMatrix> stack_homs(AbelianPGroup const& dst, std::vector<EndoMatrix> const& parts) {
  AbelianPGroup big{dst.p, {}};
  EndoMatrix m;
  for (auto const& part : parts) {
    big.exponents.insert(big.exponents.end(), dst.exponents.begin(), dst.exponents.end());
    m.insert(m.end(), part.begin(), part.end());
  }
  return {big, m};
}

/// Γ acting on an abelian p-group; action[g] is an automorphism matrix.
struct GModule {
  AbelianPGroup base;
  Group group;
  std::vector<EndoMatrix> action;

  EndoMatrix const& of(Element g) const { return action[g]; }

  /// `p=<p> exps=<e,...> gens=<g>:<matrix>;...` with matrices as rows joined by '/'.
  std::string serialize(std::vector<Element> const& gens) const {
    std::ostringstream os;
    os << "group=" << group.name() << " p=" << base.p << " exps=";
    for (std::size_t i = 0; i < base.exponents.size(); ++i) os << (i ? "," : "") << base.exponents[i];
    if (base.exponents.empty()) os << '-';
    os << " gens=";
    for (std::size_t s = 0; s < gens.size(); ++s) {
      os << (s ? ";" : "") << group.labels()[gens[s]] << ':';
      auto const& m = action[gens[s]];
      for (std::size_t i = 0; i < m.size(); ++i) {
        os << (i ? "/" : "");
        for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? "," : "") << m[i][j];
      }
    }
    return os.str();
  }
};

/// Extends generator images to all of Γ along the Cayley graph and checks
/// well-definedness, invertibility and action(gh) = action(g) action(h).
inline GModule make_module(AbelianPGroup base, Group const& group, std::vector<Element> const& generators,
                           std::vector<EndoMatrix> const& images) {
  using K = ModuleError::Kind;
  base.validate();
  if (generators.size() != images.size()) throw DomainError("make_module: one image per generator required");
  for (auto const& img : images) {
    if (!hom_well_defined(base, base, img)) throw ModuleError(K::NotEndomorphism, "make_module: matrix is not a well-defined endomorphism");
    if (!is_automorphism(base, img)) throw ModuleError(K::NotInvertible, "make_module: matrix is not invertible");
  }
  std::vector<EndoMatrix> action(group.order());
  std::vector<bool> assigned(group.order(), false);
  action[group.identity()] = identity_endo(base);
  assigned[group.identity()] = true;
  std::vector<Element> queue{group.identity()};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    Element const x = queue[q];
    for (std::size_t s = 0; s < generators.size(); ++s) {
      Element const y = group.mul(x, generators[s]);
      auto m = compose(base, action[x], images[s]);
      if (!assigned[y]) {
        assigned[y] = true;
        action[y] = std::move(m);
        queue.push_back(y);
      } else if (action[y] != m) {
        throw ModuleError(K::RelationViolation, "make_module: generator images violate a group relation");
      }
    }
  }
  if (queue.size() != group.order()) throw DomainError("make_module: elements do not generate the group");
  for (Element g = 0; g < group.order(); ++g)
    for (Element h = 0; h < group.order(); ++h)
      if (action[group.mul(g, h)] != compose(base, action[g], action[h]))
        throw ModuleError(K::RelationViolation, "make_module: action is not multiplicative");
  return GModule{std::move(base), group, std::move(action)};
}

inline GModule trivial_module(AbelianPGroup base, Group const& group) {
  std::vector<Element> all(group.order());
  std::iota(all.begin(), all.end(), Element{0});
  std::vector<EndoMatrix> imgs(group.order(), identity_endo(base));
  return make_module(std::move(base), group, all, imgs);
}

/// Σ coeff_g · action(g), rows reduced modulo p^{e_i}.
inline EndoMatrix apply_ring_element(GModule const& m, RingElement const& r) {
  auto const& b = m.base;
  if (r.coeffs.size() != m.group.order()) throw DomainError("apply_ring_element: coefficient count != group order");
  EndoMatrix out = zero_endo(b);
  for (Element g = 0; g < m.group.order(); ++g) {
    if (r.coeffs[g] == 0) continue;
    for (std::size_t i = 0; i < b.rank(); ++i) {
      auto const mod = b.modulus(i);
      auto const c = detail::mod_signed(r.coeffs[g], mod);
      for (std::size_t j = 0; j < b.rank(); ++j) out[i][j] = (out[i][j] + mulmod(c, m.action[g][i][j], mod)) % mod;
    }
  }
  return out;
}

struct Substructure {
  Invariants kernel;
  Invariants image;
};

/// Kernel and image of an endomorphism of b, with #ker · #im = #b checked.
inline Substructure substructure(AbelianPGroup const& b, EndoMatrix const& endo) {
  if (!hom_well_defined(b, b, endo)) throw DomainError("substructure: not a well-defined endomorphism");
  Substructure s{subgroup_invariants(b, kernel_generators(b, b, endo)), subgroup_invariants(b, endo)};
  if (invariants_order(s.kernel) * invariants_order(s.image) != b.order())
    throw InvariantViolation("substructure: #kernel * #image != #base");
  return s;
}

inline Substructure substructure(GModule const& m, EndoMatrix const& endo) { return substructure(m.base, endo); }

// ---------------------------------------------------------------------------
// Maschke

struct MaschkeResult {
  std::vector<ModVector> sub_basis;
  std::vector<ModVector> complement;  // basis, reduced echelon rows
  Matrix<std::uint64_t> projector;    // G-equivariant projector onto sub
};

namespace detail {

inline Matrix<std::uint64_t> fp_inverse(PrimeField const& f, Matrix<std::uint64_t> const& a) {
  std::size_t const n = a.size();
  Matrix<std::uint64_t> aug(n, std::vector<std::uint64_t>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto const piv = rref(f, aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw InvariantViolation("fp_inverse: singular matrix");
  Matrix<std::uint64_t> inv(n, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/// Nonzero rows of the reduced echelon form of the given vectors.
inline std::vector<ModVector> row_basis(PrimeField const& f, std::vector<ModVector> rows) {
  if (rows.empty()) return {};
  auto const piv = rref(f, rows);
  rows.resize(piv.size());
  return rows;
}

inline std::size_t span_rank(PrimeField const& f, std::vector<ModVector> const& rows) {
  return rows.empty() ? 0 : rank(f, rows);
}

inline Matrix<std::uint64_t> transpose(Matrix<std::uint64_t> const& a, std::size_t rows_if_empty = 0) {
  std::size_t const r = a.size(), c = r == 0 ? rows_if_empty : a[0].size();
  Matrix<std::uint64_t> t(c, std::vector<std::uint64_t>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) t[j][i] = a[i][j];
  return t;
}

}  // namespace detail

/// G-stable complement to a G-stable subspace of an elementary abelian module
/// via the averaged projector (1/#G) Σ g π₀ g⁻¹.
inline MaschkeResult maschke_complement(GModule const& m, std::vector<ModVector> const& sub) {
  auto const& b = m.base;
  std::uint64_t const p = b.p;
  if (std::any_of(b.exponents.begin(), b.exponents.end(), [](unsigned e) { return e != 1; }))
    throw DomainError("maschke_complement: base must be elementary abelian");
  if (m.group.order() % p == 0) throw DomainError("maschke_complement: p divides #G");
  PrimeField f(p);
  std::size_t const n = b.rank();
  auto const basis = detail::row_basis(f, sub);
  std::size_t const s = basis.size();
  for (Element g = 0; g < m.group.order(); ++g) {
    auto ext = basis;
    for (auto const& v : basis) ext.push_back(apply(b, m.action[g], v));
    if (detail::span_rank(f, ext) != s) throw ModuleError(ModuleError::Kind::Hypothesis, "maschke_complement: sub is not G-stable");
  }
  // T = [basis | standard vectors at the non-pivot coordinates]
  Matrix<std::uint64_t> t_cols = basis;
  {
    std::vector<bool> pivot(n, false);
    for (auto const& v : basis)
      for (std::size_t j = 0; j < n; ++j)
        if (v[j] != 0) {
          pivot[j] = true;
          break;
        }
    for (std::size_t j = 0; j < n; ++j)
      if (!pivot[j]) {
        ModVector e(n, 0);
        e[j] = 1;
        t_cols.push_back(e);
      }
  }
  auto const t = detail::transpose(t_cols, n);
  auto const t_inv = detail::fp_inverse(f, t);
  auto diag = zero_matrix(f, n, n);
  for (std::size_t i = 0; i < s; ++i) diag[i][i] = 1;
  auto const pi0 = mat_mul(f, mat_mul(f, t, diag), t_inv);

  auto to_fp = [&](EndoMatrix const& a) {
    Matrix<std::uint64_t> r = a;
    for (auto& row : r)
      for (auto& v : row) v %= p;
    return r;
  };
  auto avg = zero_matrix(f, n, n);
  for (Element g = 0; g < m.group.order(); ++g) {
    auto const term = mat_mul(f, mat_mul(f, to_fp(m.action[g]), pi0), to_fp(m.action[m.group.inv(g)]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) avg[i][j] = f.add(avg[i][j], term[i][j]);
  }
  auto const inv_order = f.inv(f.from_int(m.group.order()));
  for (auto& row : avg)
    for (auto& v : row) v = f.mul(v, inv_order);

  // complement = image of (1 - π), spanned by its columns
  auto one_minus = identity_matrix(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) one_minus[i][j] = f.sub(one_minus[i][j], avg[i][j]);
  auto complement = detail::row_basis(f, detail::transpose(one_minus, n));

  // verification: equivariance, direct sum, stability
  for (Element g = 0; g < m.group.order(); ++g) {
    auto const a = to_fp(m.action[g]);
    if (mat_mul(f, a, avg) != mat_mul(f, avg, a)) throw InvariantViolation("maschke_complement: projector not equivariant");
    auto ext = complement;
    for (auto const& v : complement) ext.push_back(apply(b, m.action[g], v));
    if (detail::span_rank(f, ext) != complement.size()) throw InvariantViolation("maschke_complement: complement not G-stable");
  }
  auto both = basis;
  both.insert(both.end(), complement.begin(), complement.end());
  if (s + complement.size() != n || detail::span_rank(f, both) != n)
    throw InvariantViolation("maschke_complement: not a direct sum decomposition");
  return MaschkeResult{basis, complement, avg};
}

// ---------------------------------------------------------------------------
// Decompositions

enum class Verdict { Pass, Fail, HypothesisViolated };

inline char const* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    default: return "HYPOTHESIS";
  }
}

struct NormSplitReport {
  Invariants kernel, image;
  bool hypothesis_ok = false;    // N∘N = degree·N
  bool intersection_trivial = false;
  bool order_ok = false;
  Verdict verdict = Verdict::Fail;
};

/// base ≅ ker N ⊕ im N when N acts as multiplication by degree on its image
/// and degree is a unit mod p.
inline NormSplitReport norm_split(GModule const& m, RingElement const& norm, std::uint64_t degree) {
  auto const& b = m.base;
  if (degree % b.p == 0) throw DomainError("norm_split: degree must be prime to p");
  NormSplitReport r;
  auto const n = apply_ring_element(m, norm);
  auto const sub = substructure(b, n);
  r.kernel = sub.kernel;
  r.image = sub.image;
  auto const n2 = compose(b, n, n);
  EndoMatrix scaled = n;
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (auto& v : scaled[i]) v = mulmod(v, degree, b.modulus(i));
  r.hypothesis_ok = n2 == scaled;
  if (!r.hypothesis_ok) {
    r.verdict = Verdict::HypothesisViolated;
    return r;
  }
  // N restricted to im N is injective iff #N(im N) = #im N
  r.intersection_trivial = invariants_order(subgroup_invariants(b, n2)) == invariants_order(r.image);
  r.order_ok = invariants_order(r.kernel) * invariants_order(r.image) == b.order();
  r.verdict = r.intersection_trivial && r.order_ok ? Verdict::Pass : Verdict::Fail;
  return r;
}

struct V4Report {
  std::array<Invariants, 3> parts;  // image(1 + σ_i)
  bool injective = false;
  bool order_ok = false;
  Verdict verdict = Verdict::Fail;
};

namespace detail {

/// The three involutions of a Klein four group in increasing element order.
inline std::array<Element, 3> v4_involutions(Group const& g) {
  if (g.order() != 4 || !g.is_abelian()) throw DomainError("v4_decompose: group is not V4");
  std::array<Element, 3> out{};
  std::size_t k = 0;
  for (Element x = 0; x < 4; ++x) {
    if (x == g.identity()) continue;
    if (g.element_order(x) != 2) throw DomainError("v4_decompose: group is not V4");
    out[k++] = x;
  }
  return out;
}

}  // namespace detail

/// c ↦ (d(1+σ_0), d(1+σ_1), d(1+σ_2)) with 2d = c is an isomorphism onto
/// the product of the images whenever the full norm annihilates.
inline V4Report v4_decompose(GModule const& m) {
  auto const& b = m.base;
  auto const sig = detail::v4_involutions(m.group);
  if (b.p == 2) throw DomainError("v4_decompose: p must be odd");
  auto const norm = apply_ring_element(m, RingElement::norm(m.group, whole_group(m.group)));
  if (norm != zero_endo(b)) throw ModuleError(ModuleError::Kind::Hypothesis, "v4_decompose: norm does not annihilate");
  V4Report r;
  std::vector<EndoMatrix> maps;
  BigInt product = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    auto const one_plus = apply_ring_element(m, RingElement::element(m.group, m.group.identity()) + RingElement::element(m.group, sig[i]));
    r.parts[i] = subgroup_invariants(b, one_plus);
    product *= invariants_order(r.parts[i]);
    EndoMatrix half = one_plus;
    for (std::size_t row = 0; row < b.rank(); ++row) {
      auto const mod = b.modulus(row);
      auto const inv2 = (mod + 1) / 2;
      for (auto& v : half[row]) v = mulmod(v, inv2, mod);
    }
    maps.push_back(std::move(half));
  }
  auto const [target, stacked] = stack_homs(b, maps);
  auto const ker = subgroup_invariants(b, kernel_generators(b, target, stacked));
  r.injective = ker.empty();
  r.order_ok = product == b.order();
  r.verdict = r.injective && r.order_ok ? Verdict::Pass : Verdict::Fail;
  return r;
}

struct GrunReport {
  std::size_t commutator_order = 0;
  bool commutator_trivial = false;  // Γ' acts trivially
  std::uint64_t norm_image_exponent = 1;
  bool annihilates = false;  // #Γ' · e kills the module
  Verdict verdict = Verdict::Fail;
};

/// On a cyclic module Aut is abelian, so Γ' acts trivially, and #Γ'·e
/// annihilates where e is the exponent of the image of the Γ'-norm.
inline GrunReport grun_check(GModule const& m) {
  if (m.base.rank() > 1) throw DomainError("grun_check: module is not cyclic");
  GrunReport r;
  auto const comm = commutator_subgroup(m.group);
  r.commutator_order = comm.order();
  auto const id = identity_endo(m.base);
  r.commutator_trivial = std::all_of(comm.members.begin(), comm.members.end(), [&](Element g) { return m.action[g] == id; });
  auto const img = subgroup_invariants(m.base, apply_ring_element(m, RingElement::norm(m.group, comm)));
  r.norm_image_exponent = img.empty() ? 1 : img.front();
  if (m.base.rank() == 0) {
    r.annihilates = true;
  } else {
    BigInt const bound = BigInt(r.commutator_order) * r.norm_image_exponent;
    r.annihilates = bound % m.base.modulus(0) == 0;
  }
  r.verdict = r.commutator_trivial && r.annihilates ? Verdict::Pass : Verdict::Fail;
  return r;
}

/// Every action of g on Z/p^e (homomorphisms into the unit group), found by
/// assigning units to a generating set and keeping the consistent ones.
inline std::vector<GModule> enumerate_cyclic_actions(Group const& g, std::uint64_t p, unsigned e) {
  AbelianPGroup base{p, {e}};
  base.validate();
  std::uint64_t const mod = base.modulus(0);
  if (mod > 100000) throw DomainError("enumerate_cyclic_actions: p^e too large");
  std::vector<Element> gens;
  {
    Subgroup h = trivial_subgroup(g);
    for (Element x = 0; x < g.order() && h.order() < g.order(); ++x) {
      if (h.contains(x)) continue;
      gens.push_back(x);
      h = generate_subgroup(g, gens);
    }
  }
  // candidate units per generator: u^{ord(x)} = 1
  std::vector<std::vector<std::uint64_t>> cands(gens.size());
  for (std::size_t s = 0; s < gens.size(); ++s)
    for (std::uint64_t u = 1; u < mod; ++u)
      if (u % p != 0 && powmod(u, g.element_order(gens[s]), mod) == 1) cands[s].push_back(u);
  std::vector<GModule> out;
  std::vector<std::size_t> idx(gens.size(), 0);
  while (true) {
    std::vector<EndoMatrix> imgs;
    for (std::size_t s = 0; s < gens.size(); ++s) imgs.push_back({{cands[s][idx[s]]}});
    try {
      out.push_back(make_module(base, g, gens, imgs));
    } catch (ModuleError const& err) {
      if (err.kind() != ModuleError::Kind::RelationViolation) throw;
    }
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == cands[pos].size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dihedral span

struct SpanReport {
  std::size_t rank_a = 0, rank_span = 0;
  bool tau_fixed = false, norm_ok = false, intersection_trivial = false;
  Verdict verdict = Verdict::Fail;
};

/// For A fixed by the reflection τ in a D_n-module (n odd, p ∤ 2n) killed by
/// the rotation norm: A ∩ σA = 0, so ⟨A, σA⟩ has twice the p-rank of A.
inline SpanReport dihedral_span_check(GModule const& m, std::vector<ModVector> const& a_generators) {
  auto const& fam = m.group.family();
  if (!fam || fam->kind != FamilySpec::Kind::Dihedral || fam->n % 2 == 0)
    throw DomainError("dihedral_span_check: group must be D_n with n odd");
  std::uint64_t const n = fam->n;
  auto const& b = m.base;
  if ((2 * n) % b.p == 0) throw DomainError("dihedral_span_check: p divides 2n");
  Element const sigma = 1, tau = static_cast<Element>(n);
  SpanReport r;
  std::vector<Element> rotations(n);
  std::iota(rotations.begin(), rotations.end(), Element{0});
  auto const rot_norm = apply_ring_element(m, RingElement::norm(m.group, Subgroup{rotations}));
  r.norm_ok = rot_norm == zero_endo(b);
  r.tau_fixed = std::all_of(a_generators.begin(), a_generators.end(),
                            [&](ModVector const& v) { return apply(b, m.action[tau], v) == v; });
  if (!r.norm_ok || !r.tau_fixed) {
    r.verdict = Verdict::HypothesisViolated;
    return r;
  }
  auto as_columns = [&](std::vector<ModVector> const& vs) {
    EndoMatrix c(b.rank(), ModVector(vs.size(), 0));
    for (std::size_t j = 0; j < vs.size(); ++j)
      for (std::size_t i = 0; i < b.rank(); ++i) c[i][j] = vs[j][i];
    return c;
  };
  std::vector<ModVector> sa;
  for (auto const& v : a_generators) sa.push_back(apply(b, m.action[sigma], v));
  auto all = a_generators;
  all.insert(all.end(), sa.begin(), sa.end());
  auto const inv_a = subgroup_invariants(b, as_columns(a_generators));
  auto const inv_sa = subgroup_invariants(b, as_columns(sa));
  auto const inv_span = subgroup_invariants(b, as_columns(all));
  r.rank_a = p_rank(inv_a, b.p);
  r.rank_span = p_rank(inv_span, b.p);
  r.intersection_trivial = invariants_order(inv_span) == invariants_order(inv_a) * invariants_order(inv_sa);
  r.verdict = r.intersection_trivial && r.rank_span == 2 * r.rank_a ? Verdict::Pass : Verdict::Fail;
  return r;
}

}  // namespace galact
