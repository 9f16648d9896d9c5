#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "galact/error.hpp"
#include "galact/numtheory.hpp"

namespace galact {

using Element = std::uint32_t;

/// Named group families with closed-form constructions and character tables.
struct FamilySpec {
  enum class Kind { Cyclic, Dihedral, GeneralizedQuaternion, KleinFour, Alt4, Group16_08, DirectProduct };

  Kind kind = Kind::Cyclic;
  /// Cyclic: order n. Dihedral: order 2n. GeneralizedQuaternion: order 4n.
  unsigned n = 1;
  std::vector<FamilySpec> factors;  // exactly two for DirectProduct

  static FamilySpec cyclic(unsigned n) { return {Kind::Cyclic, n, {}}; }
  static FamilySpec dihedral(unsigned n) { return {Kind::Dihedral, n, {}}; }
  static FamilySpec quaternion(unsigned n) { return {Kind::GeneralizedQuaternion, n, {}}; }
  static FamilySpec klein_four() { return {Kind::KleinFour, 0, {}}; }
  static FamilySpec alt4() { return {Kind::Alt4, 0, {}}; }
  static FamilySpec group16_08() { return {Kind::Group16_08, 0, {}}; }
  static FamilySpec product(FamilySpec a, FamilySpec b) {
    return {Kind::DirectProduct, 0, {std::move(a), std::move(b)}};
  }

  bool operator==(FamilySpec const&) const = default;

  void validate() const {
    switch (kind) {
      case Kind::Cyclic:
        if (n < 1) throw DomainError("Cyclic(n) needs n >= 1");
        break;
      case Kind::Dihedral:
        if (n < 3) throw DomainError("Dihedral(n) needs n >= 3");
        break;
      case Kind::GeneralizedQuaternion:
        if (n < 2) throw DomainError("GeneralizedQuaternion(n) needs n >= 2");
        break;
      case Kind::DirectProduct:
        if (factors.size() != 2) throw DomainError("DirectProduct takes two factors");
        factors[0].validate();
        factors[1].validate();
        break;
      default:
        break;
    }
  }

  std::uint64_t order() const {
    switch (kind) {
      case Kind::Cyclic: return n;
      case Kind::Dihedral: return 2ULL * n;
      case Kind::GeneralizedQuaternion: return 4ULL * n;
      case Kind::KleinFour: return 4;
      case Kind::Alt4: return 12;
      case Kind::Group16_08: return 16;
      case Kind::DirectProduct: return factors.at(0).order() * factors.at(1).order();
    }
    return 0;
  }

  /// Shorthand used by the CLI and reports: C12, D5, H8, V4, A4, G16_8, C2xH8.
  std::string name() const {
    switch (kind) {
      case Kind::Cyclic: return "C" + std::to_string(n);
      case Kind::Dihedral: return "D" + std::to_string(n);
      case Kind::GeneralizedQuaternion: return "H" + std::to_string(4 * n);
      case Kind::KleinFour: return "V4";
      case Kind::Alt4: return "A4";
      case Kind::Group16_08: return "G16_8";
      case Kind::DirectProduct: return factors.at(0).name() + "x" + factors.at(1).name();
    }
    return "?";
  }

  /// Inverse of name(); products associate to the left.
  static FamilySpec parse(std::string_view text) {
    if (auto pos = text.rfind('x'); pos != std::string_view::npos) {
      return product(parse(text.substr(0, pos)), parse(text.substr(pos + 1)));
    }
    auto number = [&](std::string_view digits) -> unsigned {
      if (digits.empty() || digits.size() > 6 ||
          !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError("bad group family '" + std::string(text) + "'");
      }
      return static_cast<unsigned>(std::stoul(std::string(digits)));
    };
    FamilySpec spec;
    if (text == "V4") {
      spec = klein_four();
    } else if (text == "A4") {
      spec = alt4();
    } else if (text == "G16_8" || text == "16.08") {
      spec = group16_08();
    } else if (!text.empty() && text[0] == 'C') {
      spec = cyclic(number(text.substr(1)));
    } else if (!text.empty() && text[0] == 'D') {
      spec = dihedral(number(text.substr(1)));
    } else if (!text.empty() && text[0] == 'H') {
      auto const order = number(text.substr(1));
      if (order % 4 != 0) throw DomainError("generalized quaternion order must be a multiple of 4");
      spec = quaternion(order / 4);
    } else {
      throw ParseError("unknown group family '" + std::string(text) + "'");
    }
    spec.validate();
    return spec;
  }
};

/// Distinct failure modes of Cayley-table validation.
enum class CayleyDefect { Shape, NotLatinSquare, NoIdentity, NotAssociative };

class CayleyTableError : public Error {
 public:
  CayleyTableError(CayleyDefect defect, std::string const& what) : Error(what), defect_(defect) {}
  CayleyDefect defect() const noexcept { return defect_; }

 private:
  CayleyDefect defect_;
};

/// A finite group given extensionally by its multiplication table.
/// Only validate_cayley() constructs one, so every instance satisfies the
/// group axioms.
class Group {
 public:
  static constexpr std::uint32_t kExhaustiveAssociativityBound = 64;

  std::uint32_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element pow(Element a, std::uint64_t k) const {
    Element r = identity_;
    for (std::uint64_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }
  Element conj(Element g, Element x) const { return mul(mul(g, x), inv(g)); }

  std::uint32_t element_order(Element a) const {
    std::uint32_t k = 1;
    for (Element x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<std::string> const& labels() const noexcept { return labels_; }
  std::optional<FamilySpec> const& family() const noexcept { return family_; }
  std::string name() const { return family_ ? family_->name() : "G" + std::to_string(order_); }

  std::vector<Element> row(Element a) const {
    return {table_.begin() + static_cast<std::ptrdiff_t>(a) * order_,
            table_.begin() + static_cast<std::ptrdiff_t>(a + 1) * order_};
  }

  bool operator==(Group const& o) const { return order_ == o.order_ && table_ == o.table_; }

 private:
  friend Group validate_cayley(std::vector<std::vector<Element>> const&, std::vector<std::string>,
                               std::optional<FamilySpec>);

  Group() = default;

  std::uint32_t order_ = 0;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
  std::optional<FamilySpec> family_;
};

/// Checks the group axioms on a raw table and wraps it. Associativity is
/// exhaustive up to order 64 and sampled (fixed seed) above.
inline Group validate_cayley(std::vector<std::vector<Element>> const& table, std::vector<std::string> labels = {},
                             std::optional<FamilySpec> family = std::nullopt) {
  auto const n = static_cast<std::uint32_t>(table.size());
  if (n == 0) throw CayleyTableError(CayleyDefect::Shape, "empty Cayley table");
  for (auto const& r : table) {
    if (r.size() != n) throw CayleyTableError(CayleyDefect::Shape, "Cayley table is not square");
    for (auto v : r)
      if (v >= n) throw CayleyTableError(CayleyDefect::Shape, "Cayley table entry out of range");
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::uint32_t j = 0; j < n; ++j) {
      if (row_seen[table[i][j]] || col_seen[table[j][i]]) {
        throw CayleyTableError(CayleyDefect::NotLatinSquare, "Cayley table is not a Latin square (index " +
                                                                 std::to_string(i) + ")");
      }
      row_seen[table[i][j]] = true;
      col_seen[table[j][i]] = true;
    }
  }
  std::optional<Element> identity;
  for (Element e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw CayleyTableError(CayleyDefect::NoIdentity, "Cayley table has no two-sided identity");

  auto assoc = [&](Element a, Element b, Element c) { return table[table[a][b]][c] == table[a][table[b][c]]; };
  if (n <= Group::kExhaustiveAssociativityBound) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          if (!assoc(a, b, c)) {
            throw CayleyTableError(CayleyDefect::NotAssociative, "Cayley table is not associative");
          }
  } else {
    std::mt19937_64 rng(n);
    for (int t = 0; t < 20000; ++t) {
      if (!assoc(static_cast<Element>(rng() % n), static_cast<Element>(rng() % n), static_cast<Element>(rng() % n))) {
        throw CayleyTableError(CayleyDefect::NotAssociative, "Cayley table is not associative");
      }
    }
  }

  Group g;
  g.order_ = n;
  g.identity_ = *identity;
  g.table_.reserve(static_cast<std::size_t>(n) * n);
  for (auto const& r : table) g.table_.insert(g.table_.end(), r.begin(), r.end());
  g.inverse_.assign(n, 0);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (table[a][b] == *identity) g.inverse_[a] = b;
  if (labels.size() != n) {
    labels.clear();
    for (Element a = 0; a < n; ++a) labels.push_back(std::to_string(a));
  }
  g.labels_ = std::move(labels);
  g.family_ = std::move(family);
  return g;
}

namespace detail {

struct RawGroup {
  std::vector<std::vector<Element>> table;
  std::vector<std::string> labels;
};

inline std::string power_label(std::string const& gen, unsigned k) {
  if (k == 0) return "";
  return k == 1 ? gen : gen + "^" + std::to_string(k);
}

inline RawGroup raw_family(FamilySpec const& spec) {
  using Kind = FamilySpec::Kind;
  RawGroup out;
  auto const order = static_cast<Element>(spec.order());
  out.table.assign(order, std::vector<Element>(order, 0));
  switch (spec.kind) {
    case Kind::Cyclic: {
      for (Element i = 0; i < order; ++i) {
        out.labels.push_back(i == 0 ? "e" : power_label("a", i));
        for (Element j = 0; j < order; ++j) out.table[i][j] = (i + j) % order;
      }
      break;
    }
    case Kind::Dihedral:
    case Kind::GeneralizedQuaternion: {
      // a^k b^s  <->  k + r*s, with r the order of a
      bool const quat = spec.kind == Kind::GeneralizedQuaternion;
      unsigned const r = quat ? 2 * spec.n : spec.n;
      for (Element x = 0; x < order; ++x) {
        unsigned const k = x % r, s = x / r;
        std::string lab = power_label("a", k) + (s ? "b" : "");
        out.labels.push_back(lab.empty() ? "e" : lab);
        for (Element y = 0; y < order; ++y) {
          unsigned const l = y % r, t = y / r;
          unsigned kk = (s ? k + r - l : k + l) % r;
          if (quat && s && t) kk = (kk + spec.n) % r;  // b^2 = a^n
          out.table[x][y] = kk + r * (s ^ t);
        }
      }
      break;
    }
    case Kind::KleinFour: {
      out.labels = {"e", "s", "t", "st"};
      for (Element i = 0; i < 4; ++i)
        for (Element j = 0; j < 4; ++j) out.table[i][j] = i ^ j;
      break;
    }
    case Kind::Alt4: {
      std::vector<std::array<int, 4>> perms;
      std::array<int, 4> p{0, 1, 2, 3};
      do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
        if (inversions % 2 == 0) perms.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      for (auto const& q : perms) {
        out.labels.push_back("[" + std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]) +
                             std::to_string(q[3]) + "]");
      }
      for (Element i = 0; i < 12; ++i)
        for (Element j = 0; j < 12; ++j) {
          std::array<int, 4> c{};  // (pi * pj)(x) = pi(pj(x))
          for (int x = 0; x < 4; ++x) c[x] = perms[i][perms[j][x]];
          out.table[i][j] = static_cast<Element>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
      break;
    }
    case Kind::Group16_08: {
      // (Q8 x C4) / <(a^2, c^2)>: q + 8j with q = k + 4s in Q8 and j in {0, 1}
      auto q8 = raw_family(FamilySpec::quaternion(2));
      for (Element x = 0; x < 16; ++x) {
        Element const q = x % 8, j = x / 8;
        out.labels.push_back(j ? (q == 0 ? "c" : q8.labels[q] + "c") : q8.labels[q]);
        for (Element y = 0; y < 16; ++y) {
          Element prod = q8.table[q][y % 8];
          Element jj = j + y / 8;
          if (jj >= 2) {
            jj -= 2;
            prod = q8.table[prod][2];  // times a^2, central
          }
          out.table[x][y] = prod + 8 * jj;
        }
      }
      break;
    }
    case Kind::DirectProduct: {
      auto a = raw_family(spec.factors[0]);
      auto b = raw_family(spec.factors[1]);
      auto const na = static_cast<Element>(a.table.size());
      for (Element x = 0; x < order; ++x) {
        out.labels.push_back("(" + a.labels[x % na] + "," + b.labels[x / na] + ")");
        for (Element y = 0; y < order; ++y) {
          out.table[x][y] = a.table[x % na][y % na] + na * b.table[x / na][y / na];
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace detail

/// Builds and validates a member of a named family. Element indices follow
/// the family's normal form (a^k b^s -> k + ord(a) s, products x + |A| y),
/// which the closed-form character formulas rely on.
inline Group build_group(FamilySpec const& spec) {
  spec.validate();
  if (spec.order() > 4096) throw DomainError("group order too large for a Cayley table");
  auto raw = detail::raw_family(spec);
  return validate_cayley(raw.table, std::move(raw.labels), spec);
}

struct ConjugacyClasses {
  std::vector<std::vector<Element>> classes;  // identity class first, then by minimal element
  std::vector<std::size_t> class_of;          // element -> class index

  std::size_t size() const noexcept { return classes.size(); }
  Element representative(std::size_t c) const { return classes[c].front(); }
};

inline ConjugacyClasses conjugacy_classes(Group const& g) {
  ConjugacyClasses out;
  std::uint32_t const n = g.order();
  std::vector<std::size_t> owner(n, SIZE_MAX);
  auto add_class = [&](Element x) {
    std::set<Element> cls;
    for (Element h = 0; h < n; ++h) cls.insert(g.conj(h, x));
    out.classes.emplace_back(cls.begin(), cls.end());
    for (auto y : cls) owner[y] = 0;
  };
  add_class(g.identity());
  for (Element x = 0; x < n; ++x)
    if (owner[x] == SIZE_MAX) add_class(x);
  out.class_of.assign(n, 0);
  for (std::size_t c = 0; c < out.classes.size(); ++c)
    for (auto x : out.classes[c]) out.class_of[x] = c;
  return out;
}

/// A subgroup, as the sorted member list inside its parent group.
struct Subgroup {
  std::vector<Element> members;

  std::size_t order() const noexcept { return members.size(); }
  bool contains(Element x) const { return std::binary_search(members.begin(), members.end(), x); }
  bool operator==(Subgroup const&) const = default;
};

inline Subgroup generate_subgroup(Group const& g, std::vector<Element> const& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> queue{g.identity()};
  in[g.identity()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto s : gens) {
      Element const y = g.mul(queue[i], s);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return Subgroup{std::move(queue)};
}

inline Subgroup trivial_subgroup(Group const& g) { return Subgroup{{g.identity()}}; }

inline Subgroup whole_group(Group const& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), Element{0});
  return Subgroup{std::move(all)};
}

inline bool is_subgroup(Group const& g, Subgroup const& h) {
  if (!h.contains(g.identity())) return false;
  for (auto a : h.members) {
    if (!h.contains(g.inv(a))) return false;
    for (auto b : h.members)
      if (!h.contains(g.mul(a, b))) return false;
  }
  return true;
}

inline bool is_normal(Group const& g, Subgroup const& h) {
  for (Element x = 0; x < g.order(); ++x)
    for (auto a : h.members)
      if (!h.contains(g.conj(x, a))) return false;
  return true;
}

/// Decided by scanning element orders for one equal to #H.
inline bool is_cyclic(Group const& g, Subgroup const& h) {
  return std::any_of(h.members.begin(), h.members.end(),
                     [&](Element x) { return g.element_order(x) == h.order(); });
}

inline Subgroup center(Group const& g) {
  std::vector<Element> z;
  for (Element a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return Subgroup{std::move(z)};
}

inline Subgroup commutator_subgroup(Group const& g) {
  std::set<Element> comms;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) comms.insert(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
  return generate_subgroup(g, {comms.begin(), comms.end()});
}

inline std::uint64_t exponent(Group const& g) {
  std::uint64_t e = 1;
  for (Element a = 0; a < g.order(); ++a) e = std::lcm(e, std::uint64_t{g.element_order(a)});
  return e;
}

/// Every normal subgroup, as unions of conjugacy classes closed under
/// products. Sorted by order, then members.
inline std::vector<Subgroup> normal_subgroups(Group const& g) {
  if (g.order() > 64) throw DomainError("normal subgroup enumeration is limited to order <= 64");
  auto const cc = conjugacy_classes(g);
  std::set<std::vector<Element>> found;
  std::vector<Subgroup> frontier{trivial_subgroup(g)};
  found.insert(frontier[0].members);
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (auto const& n : frontier) {
      for (auto const& cls : cc.classes) {
        if (n.contains(cls.front())) continue;
        // the normal closure of N and one class representative
        std::vector<Element> closure_gens = n.members;
        closure_gens.insert(closure_gens.end(), cls.begin(), cls.end());
        auto h = generate_subgroup(g, closure_gens);
        if (found.insert(h.members).second) next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (auto const& m : found) out.push_back(Subgroup{m});
  std::stable_sort(out.begin(), out.end(), [](Subgroup const& a, Subgroup const& b) { return a.order() < b.order(); });
  return out;
}

/// Invariant factors of an abelian group, largest first (empty when trivial).
inline std::vector<std::uint64_t> abelian_invariants(Group const& g) {
  if (!g.is_abelian()) throw DomainError("abelian_invariants: group is not abelian");
  std::vector<std::vector<unsigned>> per_prime;  // descending exponent lists
  for (auto ell : prime_divisors(g.order())) {
    std::vector<unsigned> exps;  // exps[i] = #factors with ell-exponent >= i+1
    std::uint64_t prev = 1;
    for (unsigned i = 1;; ++i) {
      auto const q = ipow(ell, i);
      std::uint64_t count = 0;
      for (Element a = 0; a < g.order(); ++a)
        if (q % g.element_order(a) == 0) ++count;
      if (count == prev) break;
      exps.push_back(valuation(count / prev, ell));
      prev = count;
    }
    // exps[i] factors have exponent >= i+1; convert to a descending list
    std::vector<unsigned> cyc(exps.empty() ? 0 : exps[0], 0);
    for (unsigned i = 0; i < exps.size(); ++i)
      for (unsigned k = 0; k < exps[i]; ++k) cyc[k] = i + 1;
    per_prime.push_back(cyc);
  }
  auto const primes = prime_divisors(g.order());
  std::size_t len = 0;
  for (auto const& v : per_prime) len = std::max(len, v.size());
  std::vector<std::uint64_t> out(len, 1);
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t k = 0; k < per_prime[i].size(); ++k) out[k] *= ipow(primes[i], per_prime[i][k]);
  return out;
}

/// Cayley table on cosets of a normal subgroup; cosets ordered by minimal
/// element, labels are those of the coset representatives.
inline Group quotient(Group const& g, Subgroup const& n) {
  if (!is_subgroup(g, n) || !is_normal(g, n)) throw DomainError("quotient: subgroup is not normal");
  std::vector<std::size_t> coset_of(g.order(), SIZE_MAX);
  std::vector<Element> reps;
  // identity coset first
  auto add = [&](Element x) {
    for (auto h : n.members) coset_of[g.mul(x, h)] = reps.size();
    reps.push_back(x);
  };
  add(g.identity());
  for (Element x = 0; x < g.order(); ++x)
    if (coset_of[x] == SIZE_MAX) add(x);
  auto const k = static_cast<Element>(reps.size());
  std::vector<std::vector<Element>> table(k, std::vector<Element>(k));
  std::vector<std::string> labels;
  for (Element i = 0; i < k; ++i) {
    labels.push_back(g.labels()[reps[i]] + "N");
    for (Element j = 0; j < k; ++j) table[i][j] = static_cast<Element>(coset_of[g.mul(reps[i], reps[j])]);
  }
  return validate_cayley(table, std::move(labels));
}

struct SubgroupAnalysis {
  Subgroup center;
  Subgroup commutator;
  std::uint64_t exponent = 1;
  std::vector<Subgroup> normal_subgroups;
  std::vector<std::uint64_t> abelianization;  // invariant factors, largest first
};

inline SubgroupAnalysis subgroup_analysis(Group const& g) {
  SubgroupAnalysis a;
  a.center = center(g);
  a.commutator = commutator_subgroup(g);
  a.exponent = exponent(g);
  a.normal_subgroups = normal_subgroups(g);
  a.abelianization = abelian_invariants(quotient(g, a.commutator));
  return a;
}

/// Text form: optional `# family: <name>` comment, the order, then one row
/// of space-separated indices per element.
inline std::string to_text(Group const& g) {
  std::ostringstream os;
  if (g.family()) os << "# family: " << g.family()->name() << '\n';
  os << g.order() << '\n';
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) os << (b ? " " : "") << g.mul(a, b);
    os << '\n';
  }
  return os.str();
}

/// Reads to_text() output. A family comment is kept only if the family's
/// own construction reproduces the table exactly.
inline Group parse_group_text(std::string const& text) {
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::string> family_name;
  std::optional<std::uint32_t> order;
  std::vector<std::vector<Element>> rows;
  while (std::getline(is, line)) {
    ++lineno;
    auto const first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      auto const tag = line.find("family:");
      if (tag != std::string::npos) {
        std::istringstream ns(line.substr(tag + 7));
        std::string nm;
        ns >> nm;
        family_name = nm;
      }
      continue;
    }
    std::istringstream ls(line);
    if (!order) {
      long long v = 0;
      if (!(ls >> v) || v <= 0) throw ParseError("expected group order", lineno);
      order = static_cast<std::uint32_t>(v);
      continue;
    }
    std::vector<Element> row;
    long long v = 0;
    while (ls >> v) {
      if (v < 0) throw ParseError("negative table entry", lineno);
      row.push_back(static_cast<Element>(v));
    }
    if (!ls.eof()) throw ParseError("non-numeric table entry", lineno);
    if (row.size() != *order) throw ParseError("row length does not match the order", lineno);
    rows.push_back(std::move(row));
  }
  if (!order) throw ParseError("missing group order");
  if (rows.size() != *order) throw ParseError("expected " + std::to_string(*order) + " table rows");
  auto g = validate_cayley(rows);
  if (family_name) {
    auto spec = FamilySpec::parse(*family_name);
    auto ref = build_group(spec);
    if (ref == g) return ref;
  }
  return g;
}

}  // namespace galact
