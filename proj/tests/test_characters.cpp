#include "catch_amalgamated.hpp"

#include <set>

#include "corpus.hpp"
#include "galact/characters.hpp"
#include "oracles.hpp"

using namespace galact;

namespace {

/// Sum over g of chi(g) psi(g^-1), by classes.
FieldElement inner(CharacterTable const& t, SplitCharacter const& a, SplitCharacter const& b) {
  auto const& e = t.field;
  FieldElement s = e.zero();
  for (std::size_t c = 0; c < t.classes.size(); ++c) {
    auto const rep = t.classes.representative(c);
    auto const ic = t.classes.class_of[t.group.inv(rep)];
    auto const term = e.mul(a.values[c], b.values[ic]);
    s = e.add(s, e.mul(term, e.from_int(t.classes.classes[c].size())));
  }
  return s;
}

/// Number of orbits of conjugacy classes under g -> g^p: the count of
/// F_p-irreducible representations when p does not divide #G.
std::size_t p_class_count(Group const& g, std::uint64_t p) {
  auto const cc = conjugacy_classes(g);
  std::vector<std::size_t> parent(cc.size());
  for (std::size_t c = 0; c < cc.size(); ++c) parent[c] = c;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (std::size_t c = 0; c < cc.size(); ++c) {
    auto const y = cc.class_of[g.pow(cc.representative(c), p)];
    parent[find(c)] = find(y);
  }
  std::set<std::size_t> roots;
  for (std::size_t c = 0; c < cc.size(); ++c) roots.insert(find(c));
  return roots.size();
}

/// Smallest k with Frob^k fixing every value of the row.
unsigned frobenius_period(CharacterTable const& t, SplitCharacter const& row) {
  auto v = row.values;
  for (unsigned k = 1;; ++k) {
    for (auto& x : v) x = t.field.frobenius(x);
    if (v == row.values) return k;
  }
}

}  // namespace

TEST_CASE("cyclic tables match the explicit root-of-unity formula", "[characters]") {
  for (unsigned n : {1u, 2u, 5u, 6u, 12u}) {
    for (std::uint64_t p : {7ull, 11ull, 13ull}) {
      if (n % p == 0) continue;
      auto const t = character_table_family(FamilySpec::cyclic(n), p);
      auto const want = oracle::cyclic_character_exponents(n);
      std::set<std::vector<FieldElement>> expected, got;
      for (auto const& r : want) {
        std::vector<FieldElement> vals(n);
        // column c holds the class of element c (abelian: classes are singletons)
        for (std::size_t c = 0; c < n; ++c) vals[c] = t.field.pow(t.field.root_of_unity(1, n == 1 ? 1 : n), r[t.classes.representative(c)]);
        expected.insert(vals);
      }
      for (auto const& r : t.rows) got.insert(r.values);
      INFO("C" << n << " p=" << p);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("character tables satisfy the orthogonality relations", "[characters][property]") {
  for (auto const& name : corpus::groups()) {
    auto const g = build_group(FamilySpec::parse(name));
    for (auto p : corpus::primes()) {
      if (g.order() % p == 0) continue;
      auto const t = character_table(g, p);
      INFO(name << " p=" << p);
      REQUIRE(t.rows.size() == t.class_number());
      std::uint64_t sum_sq = 0;
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        sum_sq += std::uint64_t{t.rows[i].degree} * t.rows[i].degree;
        REQUIRE(t.rows[i].values[0] == t.field.from_int(t.rows[i].degree));
        for (std::size_t j = 0; j < t.rows.size(); ++j) {
          auto const want = i == j ? t.field.from_int(g.order()) : t.field.zero();
          REQUIRE(inner(t, t.rows[i], t.rows[j]) == want);
        }
      }
      REQUIRE(sum_sq == g.order());
    }
  }
}

TEST_CASE("general method reproduces the family formulas", "[characters][property]") {
  for (auto const& name : corpus::groups()) {
    auto const spec = FamilySpec::parse(name);
    auto const g = build_group(spec);
    for (auto p : corpus::primes()) {
      if (g.order() % p == 0) continue;
      INFO(name << " p=" << p);
      REQUIRE(tables_equivalent(character_table_general(g, p), character_table_family(spec, p)));
    }
  }
}

TEST_CASE("general method works without family metadata", "[characters]") {
  auto const named = build_group(FamilySpec::dihedral(6));
  auto const bare = parse_group_text(to_text(named).substr(to_text(named).find('\n') + 1));
  REQUIRE_FALSE(bare.family());
  auto const t = character_table(bare, 5);
  CHECK(t.rows.size() == 6);
  CHECK(tables_equivalent(t, character_table_family(FamilySpec::dihedral(6), 5)));
}

TEST_CASE("Galois orbits and F_p-irreducibles", "[characters][property]") {
  for (auto const& name : corpus::groups()) {
    auto const g = build_group(FamilySpec::parse(name));
    for (auto p : corpus::primes()) {
      if (g.order() % p == 0) continue;
      auto const t = character_table(g, p);
      auto const orbits = galois_orbits(t);
      INFO(name << " p=" << p);
      std::size_t covered = 0;
      for (auto const& o : orbits) {
        covered += o.members.size();
        REQUIRE(frobenius_period(t, t.rows[o.members.front()]) == o.r);
        for (auto m : o.members) {
          REQUIRE(t.rows[m].degree == o.degree);
          REQUIRE(character_kernel(t, m).faithful == o.faithful);
        }
      }
      REQUIRE(covered == t.rows.size());
      auto const irr = fp_irreducibles(t);
      REQUIRE(irr.size() == p_class_count(g, p));
      std::uint64_t dim = 0;
      for (auto const& x : irr) dim += x.degree * orbits[x.orbit].degree;
      REQUIRE(dim == g.order());  // regular representation: sum of r d^2
    }
  }
}

TEST_CASE("kernels", "[characters]") {
  auto const t = character_table_family(FamilySpec::alt4(), 7);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    auto const k = character_kernel(t, i);
    if (t.rows[i].degree == 3) CHECK(k.faithful);
    if (t.rows[i].degree == 1 && t.rows[i].values == std::vector<FieldElement>(t.rows[i].values.size(), t.field.one()))
      CHECK(k.kernel.order() == 12);
  }
  auto const trivial = character_table(build_group(FamilySpec::cyclic(1)), 5);
  CHECK(trivial.rows.size() == 1);
  CHECK(fp_irreducibles(trivial).front().degree == 1);
}

TEST_CASE("fully split tables have singleton orbits", "[characters]") {
  // exponent divides p - 1, so every value lies in F_p
  for (auto [name, p] : std::vector<std::pair<std::string, std::uint64_t>>{{"C6", 7}, {"D4", 5}, {"H8", 5}, {"A4", 7}, {"C4xC2", 13}}) {
    auto const t = character_table(build_group(FamilySpec::parse(name)), p);
    CHECK(t.field.degree() == 1);
    for (auto const& o : galois_orbits(t)) CHECK(o.r == 1);
  }
}

TEST_CASE("coprimality is enforced", "[characters]") {
  CHECK_THROWS_AS(character_table(build_group(FamilySpec::dihedral(3)), 3), DomainError);
  CHECK_THROWS_AS(character_table_general(build_group(FamilySpec::cyclic(10)), 5), DomainError);
}
