#include "catch_amalgamated.hpp"

#include "corpus.hpp"
#include "galact/rank_oracle.hpp"
#include "oracles.hpp"

using namespace galact;

namespace {

/// Closed forms recomputed with the naive order oracles.
std::uint64_t expected_modulus(FamilySpec const& s, std::uint64_t p) {
  switch (s.kind) {
    case FamilySpec::Kind::Cyclic: return oracle::order_mod(p, s.n);
    case FamilySpec::Kind::Dihedral: return 2ULL * oracle::pm_order(p, s.n);
    case FamilySpec::Kind::GeneralizedQuaternion: return 2ULL * oracle::pm_order(p, 2ULL * s.n);
    case FamilySpec::Kind::Group16_08: return 2ULL * oracle::order_mod(p, 4);
    case FamilySpec::Kind::Alt4: return 3;
    default: return 0;
  }
}

/// Center is cyclic, by direct search for a generator.
bool center_is_cyclic(Group const& g) {
  std::vector<Element> z;
  for (Element a = 0; a < g.order(); ++a) {
    bool c = true;
    for (Element b = 0; b < g.order(); ++b) c &= g.mul(a, b) == g.mul(b, a);
    if (c) z.push_back(a);
  }
  for (auto x : z) {
    std::size_t k = 1;
    for (auto y = x; y != g.identity(); y = g.mul(y, x)) ++k;
    if (k == z.size()) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("rank modulus examples", "[rank]") {
  auto const a4 = rank_modulus(build_group(FamilySpec::alt4()), 7);
  CHECK(a4.modulus == 3);
  CHECK(a4.uniform);
  REQUIRE(a4.faithful_orbits.size() == 1);
  CHECK(a4.faithful_orbits[0] == FaithfulOrbit{3, 1});
  CHECK(a4.hypothesis_note == kRankHypothesis);

  CHECK(rank_modulus(build_group(FamilySpec::dihedral(5)), 3).modulus == 4);
  CHECK(rank_modulus(build_group(FamilySpec::quaternion(2)), 3).modulus == 2);

  auto const v4 = rank_modulus(build_group(FamilySpec::klein_four()), 3);
  CHECK(v4.status == RankConstraint::Status::NoFaithfulCharacter);
  CHECK(v4.modulus == 0);
  CHECK(format_rank(v4) == "V4 3 0 0 none");
  CHECK(format_rank(a4).rfind("A4 7 3 1 ", 0) == 0);
}

TEST_CASE("closed form examples", "[rank]") {
  CHECK(closed_form_modulus(FamilySpec::cyclic(5), 11).modulus == 1);
  CHECK(closed_form_modulus(FamilySpec::group16_08(), 7).modulus == 4);
  auto const d5 = closed_form_modulus(FamilySpec::dihedral(5), 2);
  CHECK(d5.modulus == 4);
  CHECK(d5.p2_caveat);
  CHECK_THROWS_AS(closed_form_modulus(FamilySpec::dihedral(4), 2), DomainError);
  CHECK_THROWS_AS(closed_form_modulus(FamilySpec::klein_four(), 3), DomainError);
  CHECK_THROWS_AS(closed_form_modulus(FamilySpec::cyclic(5), 9), DomainError);
}

TEST_CASE("closed forms agree with naive order computations", "[rank][property]") {
  for (auto const& spec : {FamilySpec::cyclic(1), FamilySpec::cyclic(30), FamilySpec::cyclic(17), FamilySpec::dihedral(15),
                           FamilySpec::dihedral(8), FamilySpec::quaternion(7), FamilySpec::group16_08(), FamilySpec::alt4()}) {
    for (std::uint64_t p = 2; p <= 97; ++p) {
      if (!oracle::is_prime(p) || spec.order() % p == 0) continue;
      INFO(spec.name() << " p=" << p);
      REQUIRE(closed_form_modulus(spec, p).modulus == expected_modulus(spec, p));
    }
  }
}

TEST_CASE("family-path modulus matches the closed form", "[rank][property]") {
  std::vector<FamilySpec> specs;
  for (unsigned n = 1; n <= 30; ++n) specs.push_back(FamilySpec::cyclic(n));
  for (unsigned n = 3; n <= 15; ++n) specs.push_back(FamilySpec::dihedral(n));
  for (unsigned n = 2; n <= 8; ++n) specs.push_back(FamilySpec::quaternion(n));
  specs.push_back(FamilySpec::group16_08());
  specs.push_back(FamilySpec::alt4());
  for (auto const& spec : specs)
    for (std::uint64_t p = 2; p <= 50; ++p) {
      if (!oracle::is_prime(p) || spec.order() % p == 0) continue;
      INFO(spec.name() << " p=" << p);
      REQUIRE(rank_constraint_from_table(character_table_family(spec, p)).modulus == expected_modulus(spec, p));
    }
}

TEST_CASE("specialised moduli", "[rank]") {
  auto a = corollary18_modulus(5, 3);
  CHECK(a.f == 2);
  CHECK(a.valid);
  auto b = corollary18_modulus(5, 19);
  CHECK(b.f == 1);
  CHECK(b.valid);
  auto c = corollary18_modulus(5, 2);
  CHECK(c.f == 2);
  CHECK(c.sign == -1);
  CHECK(c.valid);
  CHECK_FALSE(corollary18_modulus(7, 2).valid);  // 2^3 = +1 mod 7
  CHECK_FALSE(corollary18_modulus(5, 5).valid);
  CHECK_THROWS_AS(corollary18_modulus(6, 5), DomainError);

  CHECK(prop19_cor20_modulus(5) == 2);
  CHECK(prop19_cor20_modulus(3) == 4);
  CHECK(prop19_cor20_modulus(13) == 2);
  CHECK_THROWS_AS(prop19_cor20_modulus(2), DomainError);
}

TEST_CASE("faithful irreducibles exist exactly for cyclic centers", "[rank][property]") {
  CHECK_FALSE(has_faithful_irreducible(build_group(FamilySpec::klein_four()), 3));
  CHECK(has_faithful_irreducible(build_group(FamilySpec::cyclic(8)), 3));
  CHECK(has_faithful_irreducible(build_group(FamilySpec::quaternion(2)), 5));
  for (auto const& name : corpus::ell_groups()) {
    auto const g = build_group(FamilySpec::parse(name));
    auto const ell = prime_divisors(g.order()).front();
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
      if (p == ell) continue;
      INFO(name << " p=" << p);
      bool const cyc = center_is_cyclic(g);
      REQUIRE(has_faithful_irreducible(g, p) == cyc);
      if (cyc && !g.is_abelian()) REQUIRE(rank_modulus(g, p).modulus % ell == 0);
    }
  }
}
