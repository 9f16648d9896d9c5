#include "catch_amalgamated.hpp"

#include <numeric>

#include "galact/brute_reps.hpp"
#include "galact/characters.hpp"

using namespace galact;

namespace {

std::multiset<std::vector<std::uint64_t>> predicted(CharacterTable const& t, unsigned d) {
  std::multiset<std::vector<std::uint64_t>> out;
  for (auto const& irr : fp_irreducibles(t))
    if (irr.degree == d) out.insert(irr.values);
  return out;
}

std::multiset<std::vector<std::uint64_t>> found(std::vector<BruteRep> const& reps) {
  std::multiset<std::vector<std::uint64_t>> out;
  for (auto const& r : reps) out.insert(r.traces);
  return out;
}

}  // namespace

TEST_CASE("brute-force search recovers the predicted constituents", "[brute]") {
  std::vector<std::string> names{"C1", "C2", "C3", "C4", "C5", "C6", "V4", "D3", "D4", "H8"};
  for (auto const& name : names) {
    auto const g = build_group(FamilySpec::parse(name));
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
      if (g.order() % p == 0) continue;
      auto const t = character_table(g, p);
      for (unsigned d = 1; d <= 2; ++d) {
        INFO(name << " p=" << p << " d=" << d);
        auto const reps = brute_force_reps(g, p, d);
        REQUIRE(found(reps) == predicted(t, d));
      }
    }
  }
}

TEST_CASE("linear characters of cyclic groups count roots of unity in F_p", "[brute]") {
  for (unsigned n = 1; n <= 6; ++n)
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
      if (n % p == 0) continue;
      auto const reps = brute_force_reps(build_group(FamilySpec::cyclic(n)), p, 1);
      CHECK(reps.size() == std::gcd<std::uint64_t>(n, p - 1));
    }
}

TEST_CASE("the quaternion group has one faithful plane at p = 3", "[brute]") {
  auto const h8 = build_group(FamilySpec::quaternion(2));
  auto const reps = brute_force_reps(h8, 3, 2);
  REQUIRE(reps.size() == 1);
  CHECK(reps.front().faithful);
  auto const lines = brute_force_reps(h8, 3, 1);
  CHECK(lines.size() == 4);
  for (auto const& r : lines) CHECK_FALSE(r.faithful);
}

TEST_CASE("found representations are homomorphisms with the reported traces", "[brute]") {
  auto const d4 = build_group(FamilySpec::dihedral(4));
  auto const gens = detail::small_generating_set(d4);
  for (auto const& rep : brute_force_reps(d4, 5, 2)) {
    REQUIRE(rep.generator_images.size() == gens.size());
    // matrices are 2x2 row-major over F_5; the generator images must satisfy
    // the group's relations, checked by extending along words.
    std::map<Element, SmallMat> image{{d4.identity(), SmallMat{1, 0, 0, 1}}};
    auto mul = [](SmallMat const& a, SmallMat const& b) {
      return SmallMat{(a[0] * b[0] + a[1] * b[2]) % 5, (a[0] * b[1] + a[1] * b[3]) % 5, (a[2] * b[0] + a[3] * b[2]) % 5,
                      (a[2] * b[1] + a[3] * b[3]) % 5};
    };
    std::vector<Element> queue{d4.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        auto const y = d4.mul(queue[i], gens[s]);
        auto const m = mul(image[queue[i]], rep.generator_images[s]);
        if (auto it = image.find(y); it != image.end()) {
          REQUIRE(it->second == m);
        } else {
          image[y] = m;
          queue.push_back(y);
        }
      }
    REQUIRE(image.size() == 8);
    auto const cc = conjugacy_classes(d4);
    for (std::size_t c = 0; c < cc.size(); ++c) {
      auto const& m = image[cc.representative(c)];
      CHECK((m[0] + m[3]) % 5 == rep.traces[c]);
    }
  }
}

TEST_CASE("brute-force bounds", "[brute]") {
  CHECK_THROWS_AS(brute_force_reps(build_group(FamilySpec::cyclic(3)), 3, 1), DomainError);
  CHECK_THROWS_AS(brute_force_reps(build_group(FamilySpec::cyclic(3)), 5, 3), DomainError);
}
