#include "catch_amalgamated.hpp"

#include <array>
#include <map>

#include "galact/groups.hpp"
#include "oracles.hpp"

using namespace galact;

namespace {

// Independent models: 2x2 matrix groups over F_q generated by explicit
// matrices, closed by brute force.
using M2 = std::array<long long, 4>;

M2 mul2(M2 const& x, M2 const& y, long long q) {
  return {(x[0] * y[0] + x[1] * y[2]) % q, (x[0] * y[1] + x[1] * y[3]) % q, (x[2] * y[0] + x[3] * y[2]) % q,
          (x[2] * y[1] + x[3] * y[3]) % q};
}

std::vector<std::vector<std::uint32_t>> matrix_group(std::vector<M2> const& gens, long long q) {
  std::vector<M2> elems{{1, 0, 0, 1}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto const& g : gens) {
      auto const y = mul2(elems[i], g, q);
      if (std::find(elems.begin(), elems.end(), y) == elems.end()) elems.push_back(y);
    }
  std::vector<std::vector<std::uint32_t>> t(elems.size(), std::vector<std::uint32_t>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      t[i][j] = static_cast<std::uint32_t>(std::find(elems.begin(), elems.end(), mul2(elems[i], elems[j], q)) - elems.begin());
  return t;
}

long long root_of_order(long long n, long long q) {
  for (long long w = 2; w < q; ++w) {
    long long x = 1;
    bool ok = true;
    for (long long k = 1; k <= n; ++k) {
      x = x * w % q;
      if (x == 1 && k < n) ok = false;
    }
    if (ok && x == 1) return w;
  }
  return 0;
}

long long prime_one_mod(long long m) {
  for (long long q = m + 1;; q += m)
    if (oracle::is_prime(static_cast<std::uint64_t>(q))) return q;
}

long long inv_mod(long long a, long long q) {
  for (long long x = 1; x < q; ++x)
    if (a * x % q == 1) return x;
  return 0;
}

std::vector<std::vector<std::uint32_t>> dihedral_model(long long n) {
  long long const q = prime_one_mod(n);
  long long const w = root_of_order(n, q);
  return matrix_group({{w, 0, 0, inv_mod(w, q)}, {0, 1, 1, 0}}, q);
}

std::vector<std::vector<std::uint32_t>> quaternion_model(long long n) {
  long long const q = prime_one_mod(2 * n);
  long long const w = root_of_order(2 * n, q);
  return matrix_group({{w, 0, 0, inv_mod(w, q)}, {0, 1, q - 1, 0}}, q);
}

std::vector<std::vector<std::uint32_t>> g1608_model() {
  return matrix_group({{2, 0, 0, 3}, {0, 1, 4, 0}, {2, 0, 0, 2}}, 5);
}

// Isomorphism invariants computed from a bare table.
struct Profile {
  std::map<unsigned, unsigned> order_histogram;
  std::size_t classes = 0;
  std::size_t center = 0;
  bool operator==(Profile const&) const = default;
};

Profile profile_of(std::vector<std::vector<std::uint32_t>> const& t) {
  Profile pr;
  std::size_t const n = t.size();
  std::uint32_t e = 0;
  for (std::uint32_t a = 0; a < n; ++a) {
    bool id = true;
    for (std::uint32_t b = 0; b < n; ++b) id &= t[a][b] == b;
    if (id) e = a;
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    unsigned k = 1;
    for (auto x = a; x != e; x = t[x][a]) ++k;
    ++pr.order_histogram[k];
    bool central = true;
    for (std::uint32_t b = 0; b < n; ++b) central &= t[a][b] == t[b][a];
    pr.center += central;
  }
  pr.classes = oracle::class_count(t);
  return pr;
}

std::vector<std::vector<std::uint32_t>> table_of(Group const& g) {
  std::vector<std::vector<std::uint32_t>> t;
  for (Element a = 0; a < g.order(); ++a) t.push_back(g.row(a));
  return t;
}

}  // namespace

TEST_CASE("family constructions match independent matrix models", "[groups]") {
  for (unsigned n = 3; n <= 12; ++n) {
    INFO("D" << n);
    REQUIRE(profile_of(table_of(build_group(FamilySpec::dihedral(n)))) == profile_of(dihedral_model(n)));
  }
  for (unsigned n = 2; n <= 8; ++n) {
    INFO("H" << 4 * n);
    REQUIRE(profile_of(table_of(build_group(FamilySpec::quaternion(n)))) == profile_of(quaternion_model(n)));
  }
  auto const g16 = g1608_model();
  REQUIRE(g16.size() == 16);
  CHECK(profile_of(table_of(build_group(FamilySpec::group16_08()))) == profile_of(g16));
}

TEST_CASE("class numbers follow the dihedral and quaternion formulas", "[groups][property]") {
  for (unsigned n = 3; n <= 15; ++n) {
    auto const want = n % 2 ? (n + 3) / 2 : n / 2 + 3;
    CHECK(conjugacy_classes(build_group(FamilySpec::dihedral(n))).size() == want);
  }
  for (unsigned n = 2; n <= 8; ++n) CHECK(conjugacy_classes(build_group(FamilySpec::quaternion(n))).size() == n + 3);
}

TEST_CASE("named small groups", "[groups]") {
  auto const c1 = build_group(FamilySpec::cyclic(1));
  CHECK(c1.order() == 1);

  auto const a4 = build_group(FamilySpec::alt4());
  CHECK(a4.order() == 12);
  auto const cc = conjugacy_classes(a4);
  std::vector<std::size_t> sizes;
  for (auto const& c : cc.classes) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 3, 4, 4});

  CHECK(conjugacy_classes(build_group(FamilySpec::dihedral(5))).size() == 4);

  auto const g = build_group(FamilySpec::group16_08());
  auto const a = subgroup_analysis(g);
  CHECK(g.order() == 16);
  CHECK(a.commutator.order() == 2);
  CHECK(a.center.order() == 4);
  CHECK(is_cyclic(g, a.center));
  CHECK(conjugacy_classes(g).size() == 10);
  CHECK(a.abelianization == std::vector<std::uint64_t>{2, 2, 2});

  auto const v4 = build_group(FamilySpec::klein_four());
  CHECK(center(v4).order() == 4);
  CHECK(commutator_subgroup(v4).order() == 1);
  CHECK(exponent(v4) == 2);

  auto const h8 = build_group(FamilySpec::quaternion(2));
  CHECK(center(h8).order() == 2);
  CHECK(commutator_subgroup(h8).order() == 2);
  CHECK(exponent(h8) == 4);
}

TEST_CASE("abelian groups have singleton classes and correct invariants", "[groups][property]") {
  for (auto name : {"C12", "C2xC2xC2", "C4xC2", "C6xC4", "C3xC3", "V4", "C2xC8"}) {
    auto const g = build_group(FamilySpec::parse(name));
    INFO(name);
    REQUIRE(conjugacy_classes(g).size() == g.order());
    std::uint64_t prod = 1;
    auto const inv = abelian_invariants(g);
    for (std::size_t i = 0; i < inv.size(); ++i) {
      prod *= inv[i];
      if (i + 1 < inv.size()) REQUIRE(inv[i] % inv[i + 1] == 0);
    }
    REQUIRE(prod == g.order());
  }
  CHECK(abelian_invariants(build_group(FamilySpec::parse("C6xC4"))) == std::vector<std::uint64_t>{12, 2});
  CHECK(abelian_invariants(build_group(FamilySpec::parse("C3xC3"))) == std::vector<std::uint64_t>{3, 3});
  CHECK(abelian_invariants(build_group(FamilySpec::cyclic(1))).empty());
}

TEST_CASE("normal subgroup lattices", "[groups]") {
  CHECK(normal_subgroups(build_group(FamilySpec::cyclic(12))).size() == 6);
  CHECK(normal_subgroups(build_group(FamilySpec::dihedral(4))).size() == 6);
  CHECK(normal_subgroups(build_group(FamilySpec::quaternion(2))).size() == 6);
  CHECK(normal_subgroups(build_group(FamilySpec::alt4())).size() == 3);
  CHECK(normal_subgroups(build_group(FamilySpec::dihedral(5))).size() == 3);
  for (auto const& n : normal_subgroups(build_group(FamilySpec::group16_08()))) {
    auto const g = build_group(FamilySpec::group16_08());
    REQUIRE(is_subgroup(g, n));
    REQUIRE(is_normal(g, n));
    REQUIRE(16 % n.order() == 0);
  }
}

TEST_CASE("quotients", "[groups]") {
  auto const h8 = build_group(FamilySpec::quaternion(2));
  auto const q = quotient(h8, center(h8));
  CHECK(q.order() == 4);
  CHECK(q.is_abelian());
  CHECK(exponent(q) == 2);
  CHECK(quotient(h8, trivial_subgroup(h8)).order() == 8);
  CHECK(quotient(h8, whole_group(h8)).order() == 1);
  auto const d4 = build_group(FamilySpec::dihedral(4));
  CHECK_THROWS_AS(quotient(d4, generate_subgroup(d4, {4})), DomainError);
}

TEST_CASE("Cayley validation", "[groups]") {
  CHECK(validate_cayley({{0}}).order() == 1);
  CHECK(validate_cayley({{0, 1}, {1, 0}}).order() == 2);
  auto defect = [](std::vector<std::vector<Element>> const& t) {
    try {
      validate_cayley(t);
    } catch (CayleyTableError const& e) {
      return e.defect();
    }
    FAIL("table accepted");
    return CayleyDefect::Shape;
  };
  CHECK(defect({{0, 1}, {1, 1}}) == CayleyDefect::NotLatinSquare);
  CHECK(defect({{0, 1}, {1}}) == CayleyDefect::Shape);
  CHECK(defect({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}) == CayleyDefect::NoIdentity);
  // Latin square with identity 0 that is not associative (a loop of order 5)
  CHECK(defect({{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}) ==
        CayleyDefect::NotAssociative);
}

TEST_CASE("text form round-trips and keeps family metadata", "[groups]") {
  for (auto name : {"D5", "H12", "A4", "G16_8", "C2xH8"}) {
    auto const g = build_group(FamilySpec::parse(name));
    auto const back = parse_group_text(to_text(g));
    INFO(name);
    CHECK(back == g);
    REQUIRE(back.family());
    CHECK(back.family()->name() == g.family()->name());
  }
  CHECK_THROWS_AS(parse_group_text("2\n0 1\n1 x\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text("3\n0 1 2\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(FamilySpec::parse("Q8"), ParseError);
  CHECK_THROWS_AS(FamilySpec::parse("D2"), DomainError);
  CHECK(FamilySpec::parse("16.08") == FamilySpec::group16_08());
}
