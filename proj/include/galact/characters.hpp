#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "galact/error.hpp"
#include "galact/finite_field.hpp"
#include "galact/groups.hpp"
#include "galact/linalg.hpp"

namespace galact {

/// An irreducible character over the splitting field E: one value per
/// conjugacy class plus the integer degree, which small p can hide
/// (only degree mod p is visible at the identity class).
struct SplitCharacter {
  std::vector<FieldElement> values;
  unsigned degree = 1;

  bool operator==(SplitCharacter const&) const = default;
};

/// Irr_E(G) for E = F_p(zeta_exp(G)). Columns follow conjugacy_classes(group).
struct CharacterTable {
  Group group;
  ConjugacyClasses classes;
  FieldSpec field;
  std::vector<SplitCharacter> rows;

  std::uint64_t prime() const { return field.characteristic(); }
  std::size_t class_number() const { return classes.size(); }
};

struct GaloisOrbit {
  std::vector<std::size_t> members;  // row indices, ascending
  unsigned r = 1;                    // orbit size = (F_p(chi) : F_p)
  unsigned degree = 1;               // common degree of the members
  bool faithful = false;
};

/// An irreducible character over F_p: the value-wise sum of one Galois orbit.
struct FpIrreducible {
  std::vector<std::uint64_t> values;  // per conjugacy class, in F_p
  unsigned degree = 1;                // orbit size times member degree
  bool faithful = false;
  std::size_t orbit = 0;              // index into galois_orbits()
};

struct CharacterKernel {
  Subgroup kernel;
  bool faithful = false;
};

namespace detail {

inline void require_coprime(Group const& g, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (g.order() % p == 0) throw DomainError("p divides the group order (modular case not supported)");
}

/// Per-element values of one character of a family group.
struct ElementCharacter {
  std::vector<FieldElement> values;
  unsigned degree = 1;
};

inline std::vector<ElementCharacter> family_characters(FamilySpec const& spec, FieldSpec const& e) {
  using Kind = FamilySpec::Kind;
  auto const order = static_cast<Element>(spec.order());
  auto const minus_one = e.from_signed(-1);
  auto sign = [&](unsigned k) { return k % 2 == 0 ? e.one() : minus_one; };
  std::vector<ElementCharacter> out;
  auto add = [&](unsigned degree, auto&& value_at) {
    ElementCharacter c;
    c.degree = degree;
    for (Element x = 0; x < order; ++x) c.values.push_back(value_at(x));
    out.push_back(std::move(c));
  };

  switch (spec.kind) {
    case Kind::Cyclic: {
      auto const n = spec.n;
      for (unsigned j = 0; j < n; ++j) add(1, [&](Element k) { return e.root_of_unity(std::int64_t{j} * k, n); });
      break;
    }
    case Kind::Dihedral: {
      auto const n = spec.n;  // x = k + n s
      add(1, [&](Element) { return e.one(); });
      add(1, [&](Element x) { return sign(x / n); });
      if (n % 2 == 0) {
        add(1, [&](Element x) { return sign(x % n); });
        add(1, [&](Element x) { return sign(x % n + x / n); });
      }
      for (unsigned j = 1; 2 * j < n; ++j) {
        add(2, [&](Element x) {
          if (x / n == 1) return e.zero();
          std::int64_t const jk = std::int64_t{j} * (x % n);
          return e.add(e.root_of_unity(jk, n), e.root_of_unity(-jk, n));
        });
      }
      break;
    }
    case Kind::GeneralizedQuaternion: {
      auto const n = spec.n, r = 2 * n;  // x = k + 2n s, a^2n = 1, b^2 = a^n
      if (n % 2 == 0) {
        for (unsigned u = 0; u < 2; ++u)
          for (unsigned v = 0; v < 2; ++v) add(1, [&](Element x) { return sign(u * (x % r) + v * (x / r)); });
      } else {
        // abelianization cyclic of order 4, generated by the image of b, with a -> b^2
        for (unsigned t = 0; t < 4; ++t)
          add(1, [&](Element x) { return e.root_of_unity(std::int64_t{t} * (2 * (x % r) + x / r), 4); });
      }
      for (unsigned j = 1; j < n; ++j) {
        add(2, [&](Element x) {
          if (x / r == 1) return e.zero();
          std::int64_t const jk = std::int64_t{j} * (x % r);
          return e.add(e.root_of_unity(jk, r), e.root_of_unity(-jk, r));
        });
      }
      break;
    }
    case Kind::KleinFour: {
      for (unsigned u = 0; u < 2; ++u)
        for (unsigned v = 0; v < 2; ++v) add(1, [&](Element x) { return sign(u * (x & 1U) + v * (x >> 1U)); });
      break;
    }
    case Kind::Alt4: {
      auto const g = build_group(spec);
      Subgroup v4;
      Element c = 0;
      for (Element x = 0; x < 12; ++x) {
        auto const ord = g.element_order(x);
        if (ord <= 2) v4.members.push_back(x);
        if (ord == 3 && c == 0) c = x;
      }
      // t(x): image of x in A4/V4 = <cV4>
      std::vector<unsigned> t(12, 0);
      for (Element x = 0; x < 12; ++x)
        for (unsigned k = 0; k < 3; ++k)
          if (v4.contains(g.mul(x, g.pow(g.inv(c), k)))) t[x] = k;
      for (unsigned j = 0; j < 3; ++j) add(1, [&](Element x) { return e.root_of_unity(std::int64_t{j} * t[x], 3); });
      add(3, [&](Element x) {
        if (x == g.identity()) return e.from_int(3);
        return v4.contains(x) ? minus_one : e.zero();
      });
      break;
    }
    case Kind::Group16_08: {
      // x = q + 8j, q = k + 4s in Q8; linear characters factor through (k mod 2, s, j)
      for (unsigned ua = 0; ua < 2; ++ua)
        for (unsigned ub = 0; ub < 2; ++ub)
          for (unsigned uc = 0; uc < 2; ++uc)
            add(1, [&](Element x) { return sign(ua * (x % 4) + ub * ((x % 8) / 4) + uc * (x / 8)); });
      // quaternion matrices tensored with c -> +-i
      for (int eps : {1, -1}) {
        add(2, [&](Element x) {
          Element const q = x % 8, j = x / 8;
          if (q / 4 == 1) return e.zero();
          auto const tr = e.add(e.root_of_unity(q % 4, 4), e.root_of_unity(-static_cast<std::int64_t>(q % 4), 4));
          return e.mul(tr, e.root_of_unity(eps * static_cast<std::int64_t>(j), 4));
        });
      }
      break;
    }
    case Kind::DirectProduct: {
      auto const left = family_characters(spec.factors[0], e);
      auto const right = family_characters(spec.factors[1], e);
      auto const na = static_cast<Element>(spec.factors[0].order());
      for (auto const& b : right)
        for (auto const& a : left) {
          add(a.degree * b.degree, [&](Element x) { return e.mul(a.values[x % na], b.values[x / na]); });
        }
      break;
    }
  }
  return out;
}

/// Row count = class number, sum of squared degrees = #G, value at the
/// identity class = degree mod p.
inline void check_table_shape(CharacterTable const& t) {
  if (t.rows.size() != t.classes.size()) throw InvariantViolation("character table: row count != class number");
  std::uint64_t sum = 0;
  for (auto const& row : t.rows) {
    if (row.values.size() != t.classes.size()) throw InvariantViolation("character table: ragged row");
    sum += std::uint64_t{row.degree} * row.degree;
    if (!(row.values[0] == t.field.from_int(row.degree))) {
      throw InvariantViolation("character table: identity value differs from degree mod p");
    }
  }
  if (sum != t.group.order()) throw InvariantViolation("character table: sum of squared degrees != #G");
}

}  // namespace detail

/// Closed-form table of a named family, values embedded into E via the
/// canonical zeta.
inline CharacterTable character_table_family(FamilySpec const& spec, std::uint64_t p) {
  auto g = build_group(spec);
  detail::require_coprime(g, p);
  auto field = build_splitting_field(p, exponent(g));
  auto classes = conjugacy_classes(g);
  CharacterTable t{std::move(g), std::move(classes), std::move(field), {}};
  for (auto& ec : detail::family_characters(spec, t.field)) {
    SplitCharacter row;
    row.degree = ec.degree;
    for (auto const& cls : t.classes.classes) {
      for (auto x : cls) {
        if (!(ec.values[x] == ec.values[cls.front()])) {
          throw InvariantViolation("family character is not a class function");
        }
      }
      row.values.push_back(ec.values[cls.front()]);
    }
    t.rows.push_back(std::move(row));
  }
  detail::check_table_shape(t);
  return t;
}

namespace detail {

/// Class multiplication coefficients: c[i][j][k] = #{(x, y) in C_i x C_j : xy = g_k}.
inline std::vector<std::vector<std::vector<std::uint64_t>>> class_coefficients(Group const& g,
                                                                                ConjugacyClasses const& cc) {
  auto const h = cc.size();
  std::vector<std::vector<std::vector<std::uint64_t>>> c(
      h, std::vector<std::vector<std::uint64_t>>(h, std::vector<std::uint64_t>(h, 0)));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t k = 0; k < h; ++k) {
      Element const gk = cc.representative(k);
      for (auto x : cc.classes[i]) ++c[i][cc.class_of[g.mul(g.inv(x), gk)]][k];
    }
  return c;
}

inline bool is_trivial_row(SplitCharacter const& row, FieldSpec const& e) {
  return row.degree == 1 && std::all_of(row.values.begin(), row.values.end(), [&](auto const& v) { return v == e.one(); });
}

/// Trivial character first, then by degree, then by values.
inline void sort_rows(std::vector<SplitCharacter>& rows, FieldSpec const& e) {
  std::sort(rows.begin(), rows.end(), [&](SplitCharacter const& a, SplitCharacter const& b) {
    bool const ta = is_trivial_row(a, e), tb = is_trivial_row(b, e);
    if (ta != tb) return ta;
    if (a.degree != b.degree) return a.degree < b.degree;
    return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(), b.values.end());
  });
}

}  // namespace detail

/// Table of an arbitrary group (order <= 64) computed over E: common
/// eigenvectors of the class-multiplication matrices give the central
/// characters; each degree d is read off as sqrt of the rank of the
/// primitive central idempotent on the regular module (rank = d^2).
inline CharacterTable character_table_general(Group const& g, std::uint64_t p) {
  detail::require_coprime(g, p);
  if (g.order() > 64) throw DomainError("general character table limited to order <= 64");
  using Vec = std::vector<FieldElement>;
  auto field = build_splitting_field(p, exponent(g));
  auto classes = conjugacy_classes(g);
  FieldSpec const& e = field;
  std::size_t const h = classes.size();
  auto const coeff = detail::class_coefficients(g, classes);

  auto class_matrix = [&](std::size_t i) {
    auto m = zero_matrix(e, h, h);
    for (std::size_t j = 0; j < h; ++j)
      for (std::size_t k = 0; k < h; ++k) m[j][k] = e.from_int(coeff[i][j][k]);
    return m;
  };

  // spaces: column bases in reduced form (rows of `basis` are the vectors)
  std::vector<Matrix<FieldElement>> spaces{identity_matrix(e, h)};
  for (std::size_t i = 0; i < h; ++i) {
    bool all_lines = std::all_of(spaces.begin(), spaces.end(), [](auto const& s) { return s.size() == 1; });
    if (all_lines) break;
    auto const m = class_matrix(i);
    std::vector<Matrix<FieldElement>> next;
    for (auto& basis : spaces) {
      std::size_t const k = basis.size();
      if (k == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      auto pivots = rref(e, basis);
      // restriction: (M b_c) expressed in the basis = its entries on pivot coordinates
      auto restricted = zero_matrix(e, k, k);
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t r = 0; r < k; ++r) {
          FieldElement acc = e.zero();
          for (std::size_t j = 0; j < h; ++j) acc = e.add(acc, e.mul(m[pivots[r]][j], basis[c][j]));
          restricted[r][c] = acc;
        }
      }
      auto const roots = split_roots(e, char_poly(e, restricted));
      std::size_t dims = 0;
      for (auto const& lambda : roots) {
        auto shifted = restricted;
        for (std::size_t d = 0; d < k; ++d) shifted[d][d] = e.sub(shifted[d][d], lambda);
        Matrix<FieldElement> eig;
        for (auto const& y : nullspace(e, shifted, k)) {
          Vec v(h, e.zero());
          for (std::size_t c = 0; c < k; ++c)
            for (std::size_t j = 0; j < h; ++j) v[j] = e.add(v[j], e.mul(y[c], basis[c][j]));
          eig.push_back(std::move(v));
        }
        dims += eig.size();
        next.push_back(std::move(eig));
      }
      if (dims != k) throw InvariantViolation("class algebra is not diagonalizable over E");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != h) throw InvariantViolation("eigenbasis degeneracy: common eigenspaces are not lines");

  std::vector<std::size_t> inverse_class(h);
  for (std::size_t j = 0; j < h; ++j) inverse_class[j] = classes.class_of[g.inv(classes.representative(j))];

  CharacterTable t{g, std::move(classes), field, {}};
  auto const& cls = t.classes;
  for (auto& space : spaces) {
    Vec omega = space.front();
    if (e.is_zero(omega[0])) throw InvariantViolation("central character vanishes at the identity");
    auto const n0 = e.inv(omega[0]);
    for (auto& v : omega) v = e.mul(v, n0);
    // S = sum_j omega_j omega_j* / |C_j| = #G / d^2
    FieldElement s = e.zero();
    for (std::size_t j = 0; j < h; ++j) {
      auto const size_inv = e.inv(e.from_int(cls.classes[j].size()));
      s = e.add(s, e.mul(e.mul(omega[j], omega[inverse_class[j]]), size_inv));
    }
    if (e.is_zero(s)) throw InvariantViolation("degenerate central character");
    // d^2 = #G / S in F_p; when that leaves one admissible d (d | #G,
    // d^2 <= #G) it is taken, otherwise d^2 is the rank of the idempotent
    std::vector<unsigned> fits;
    auto const target = e.mul(e.from_int(g.order()), e.inv(s));
    for (unsigned c = 1; std::uint64_t{c} * c <= g.order(); ++c)
      if (g.order() % c == 0 && e.from_int(std::uint64_t{c} * c) == target) fits.push_back(c);
    unsigned d = fits.size() == 1 ? fits.front() : 0;
    if (d == 0) {
      auto const s_inv = e.inv(s);
      // idempotent coefficient on each element of class j: omega_j* / (|C_j| S)
      std::vector<FieldElement> idem(g.order(), e.zero());
      for (std::size_t j = 0; j < h; ++j) {
        auto const c = e.mul(e.mul(omega[inverse_class[j]], e.inv(e.from_int(cls.classes[j].size()))), s_inv);
        for (auto x : cls.classes[j]) idem[x] = c;
      }
      auto left_mult = zero_matrix(e, g.order(), g.order());
      for (Element a = 0; a < g.order(); ++a) {
        if (e.is_zero(idem[a])) continue;
        for (Element x = 0; x < g.order(); ++x) left_mult[g.mul(a, x)][x] = e.add(left_mult[g.mul(a, x)][x], idem[a]);
      }
      auto const rk = rank(e, left_mult);
      d = static_cast<unsigned>(std::lround(std::sqrt(static_cast<double>(rk))));
      if (std::size_t{d} * d != rk || d == 0) throw InvariantViolation("idempotent rank is not a square");
    }
    SplitCharacter row;
    row.degree = d;
    for (std::size_t j = 0; j < h; ++j) {
      row.values.push_back(e.mul(e.mul(e.from_int(d), omega[j]), e.inv(e.from_int(cls.classes[j].size()))));
    }
    t.rows.push_back(std::move(row));
  }
  detail::sort_rows(t.rows, t.field);
  detail::check_table_shape(t);
  return t;
}

/// Same group, same field, same rows up to permutation.
inline bool tables_equivalent(CharacterTable const& a, CharacterTable const& b) {
  if (!(a.group == b.group) || !(a.field == b.field) || a.rows.size() != b.rows.size()) return false;
  auto ra = a.rows, rb = b.rows;
  detail::sort_rows(ra, a.field);
  detail::sort_rows(rb, b.field);
  return ra == rb;
}

/// ker chi = {g : chi(g) = chi(1)}; verified to be a normal subgroup.
inline CharacterKernel character_kernel(CharacterTable const& t, std::size_t row) {
  auto const& chi = t.rows.at(row);
  std::vector<Element> members;
  for (std::size_t c = 0; c < t.classes.size(); ++c) {
    if (chi.values[c] == chi.values[0]) members.insert(members.end(), t.classes.classes[c].begin(), t.classes.classes[c].end());
  }
  std::sort(members.begin(), members.end());
  Subgroup k{std::move(members)};
  if (!is_subgroup(t.group, k) || !is_normal(t.group, k)) throw InvariantViolation("character kernel is not a normal subgroup");
  bool const faithful = k.order() == 1;
  return {std::move(k), faithful};
}

/// Index of the row equal to chi^sigma for sigma = Frobenius.
inline std::vector<std::size_t> frobenius_permutation(CharacterTable const& t) {
  std::vector<std::size_t> perm;
  for (auto const& row : t.rows) {
    SplitCharacter image{{}, row.degree};
    for (auto const& v : row.values) image.values.push_back(t.field.frobenius(v));
    auto it = std::find(t.rows.begin(), t.rows.end(), image);
    if (it == t.rows.end()) throw InvariantViolation("Frobenius image of a character is not in the table");
    perm.push_back(static_cast<std::size_t>(it - t.rows.begin()));
  }
  return perm;
}

/// Orbits of Irr_E(G) under Frobenius. Each orbit's size is checked against
/// the degree of the field generated by a member's values, and faithfulness
/// against uniformity across the orbit.
inline std::vector<GaloisOrbit> galois_orbits(CharacterTable const& t) {
  auto const perm = frobenius_permutation(t);
  std::vector<bool> seen(t.rows.size(), false);
  std::vector<GaloisOrbit> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (seen[i]) continue;
    GaloisOrbit orbit;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      orbit.members.push_back(j);
    }
    std::sort(orbit.members.begin(), orbit.members.end());
    orbit.r = static_cast<unsigned>(orbit.members.size());
    orbit.degree = t.rows[i].degree;
    if (t.field.generated_subfield_degree(t.rows[i].values) != orbit.r) {
      throw InvariantViolation("orbit size differs from the degree of the character's value field");
    }
    orbit.faithful = character_kernel(t, i).faithful;
    for (auto j : orbit.members) {
      if (character_kernel(t, j).faithful != orbit.faithful) {
        throw InvariantViolation("faithfulness is not uniform across a Galois orbit");
      }
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

/// One F_p-irreducible per Galois orbit: the orbit sum, which must lie in F_p.
inline std::vector<FpIrreducible> fp_irreducibles(CharacterTable const& t) {
  auto const orbits = galois_orbits(t);
  std::vector<FpIrreducible> out;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    auto const& orbit = orbits[o];
    FpIrreducible irr;
    irr.degree = orbit.r * orbit.degree;
    irr.faithful = orbit.faithful;
    irr.orbit = o;
    for (std::size_t c = 0; c < t.classes.size(); ++c) {
      FieldElement sum = t.field.zero();
      for (auto j : orbit.members) sum = t.field.add(sum, t.rows[j].values[c]);
      if (!sum.in_prime_field()) throw InvariantViolation("orbit sum has a value outside F_p");
      irr.values.push_back(sum.coeffs[0]);
    }
    out.push_back(std::move(irr));
  }
  return out;
}

/// Header `group p E-degree`, then `degree faithful values...` per row.
inline std::string format_table(CharacterTable const& t) {
  std::ostringstream os;
  os << t.group.name() << ' ' << t.prime() << ' ' << t.field.degree() << '\n';
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    os << t.rows[i].degree << ' ' << (character_kernel(t, i).faithful ? 1 : 0);
    for (auto const& v : t.rows[i].values) os << ' ' << v.str();
    os << '\n';
  }
  return os.str();
}

/// Process-wide memo of family tables keyed by (family name, p).
class TableCache {
 public:
  static TableCache& instance() {
    static TableCache cache;
    return cache;
  }

  std::shared_ptr<CharacterTable const> family(FamilySpec const& spec, std::uint64_t p) {
    auto key = std::make_pair(spec.name(), p);
    {
      std::lock_guard lock(mutex_);
      if (auto it = tables_.find(key); it != tables_.end()) return it->second;
    }
    auto table = std::make_shared<CharacterTable const>(character_table_family(spec, p));
    std::lock_guard lock(mutex_);
    return tables_.emplace(std::move(key), std::move(table)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::string, std::uint64_t>, std::shared_ptr<CharacterTable const>> tables_;
};

/// Family formulas when the group carries family metadata, the general
/// method otherwise.
inline CharacterTable character_table(Group const& g, std::uint64_t p) {
  if (g.family()) return *TableCache::instance().family(*g.family(), p);
  return character_table_general(g, p);
}

}  // namespace galact
