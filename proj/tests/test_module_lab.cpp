#include "catch_amalgamated.hpp"

#include <set>

#include "galact/module_scans.hpp"

using namespace galact;

namespace {

/// Every element of b, as coordinate vectors.
std::vector<ModVector> elements(AbelianPGroup const& b) {
  std::vector<ModVector> out{ModVector(b.rank(), 0)};
  for (std::size_t i = 0; i < b.rank(); ++i) {
    std::vector<ModVector> next;
    for (auto const& v : out)
      for (std::uint64_t c = 0; c < b.modulus(i); ++c) {
        auto w = v;
        w[i] = c;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

ModVector act(AbelianPGroup const& b, EndoMatrix const& m, ModVector const& x) {
  ModVector y(b.rank(), 0);
  for (std::size_t i = 0; i < b.rank(); ++i) {
    unsigned __int128 s = 0;
    for (std::size_t j = 0; j < b.rank(); ++j) s += static_cast<unsigned __int128>(m[i][j]) * x[j];
    y[i] = static_cast<std::uint64_t>(s % b.modulus(i));
  }
  return y;
}

ModVector scaled(AbelianPGroup const& b, ModVector x, std::uint64_t k) {
  for (std::size_t i = 0; i < b.rank(); ++i) x[i] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x[i]) * k % b.modulus(i));
  return x;
}

/// Counts #{x in H : p^k x = 0} for k = 0.. until H is exhausted; this
/// sequence determines the isomorphism type of the p-group H.
std::vector<std::size_t> torsion_profile(AbelianPGroup const& b, std::set<ModVector> const& h) {
  std::vector<std::size_t> out;
  std::uint64_t pk = 1;
  while (true) {
    std::size_t c = 0;
    for (auto const& x : h) c += scaled(b, x, pk) == ModVector(b.rank(), 0);
    out.push_back(c);
    if (c == h.size()) return out;
    pk *= b.p;
  }
}

std::vector<std::size_t> torsion_profile(Invariants const& inv, std::uint64_t p) {
  std::vector<std::size_t> out;
  std::size_t total = 1;
  for (auto d : inv) total *= d;
  for (std::uint64_t pk = 1;; pk *= p) {
    std::size_t c = 1;
    for (auto d : inv) c *= std::gcd(d, pk);
    out.push_back(c);
    if (c == total) return out;
  }
}

/// Naive rank over F_p by elimination on a copy.
std::size_t rank_mod(std::vector<ModVector> rows, std::uint64_t p) {
  std::size_t r = 0;
  std::size_t const cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    std::uint64_t inv = 1;
    while (rows[r][c] % p * inv % p != 1) ++inv;
    for (auto& v : rows[r]) v = v % p * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      auto const f = rows[i][c] % p;
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] = (rows[i][k] % p + p * p - f * rows[r][k] % p) % p;
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("module construction", "[modules]") {
  auto const c2 = build_group(FamilySpec::cyclic(2));
  AbelianPGroup const z3{3, {1}};
  auto const m = make_module(z3, c2, {1}, {{{2}}});
  CHECK(m.action[1] == EndoMatrix{{2}});
  CHECK(compose(z3, m.action[1], m.action[1]) == identity_endo(z3));

  auto const c4 = build_group(FamilySpec::cyclic(4));
  try {
    make_module(AbelianPGroup{2, {2}}, c4, {1}, {{{2}}});
    FAIL("non-invertible action accepted");
  } catch (ModuleError const& e) {
    CHECK(e.kind() == ModuleError::Kind::NotInvertible);
  }
  try {
    make_module(AbelianPGroup{5, {1}}, c2, {1}, {{{2}}});  // 2^2 = 4 != 1 mod 5
    FAIL("relation violation accepted");
  } catch (ModuleError const& e) {
    CHECK(e.kind() == ModuleError::Kind::RelationViolation);
  }
  // entry (0, 1) maps Z/3 into Z/9 and must be a multiple of 3
  AbelianPGroup const b93{3, {2, 1}};
  CHECK_FALSE(hom_well_defined(b93, b93, {{1, 1}, {0, 1}}));
  CHECK(hom_well_defined(b93, b93, {{1, 3}, {1, 1}}));
  CHECK_THROWS_AS(make_module(b93, c2, {1}, {{{1, 1}, {0, 1}}}), ModuleError);

  auto const v4 = build_group(FamilySpec::klein_four());
  auto const triv = trivial_module(AbelianPGroup{7, {2, 1}}, v4);
  for (auto const& a : triv.action) CHECK(a == identity_endo(triv.base));
  CHECK(triv.serialize({1, 2}) == "group=V4 p=7 exps=2,1 gens=s:1,0/0,1;t:1,0/0,1");
  CHECK_THROWS_AS((AbelianPGroup{3, {1, 2}}.validate()), DomainError);
  CHECK_THROWS_AS((AbelianPGroup{2, {41}}.validate()), DomainError);
  CHECK(AbelianPGroup{3, {2, 1}}.str() == "Z/9+Z/3");
}

TEST_CASE("group ring elements", "[modules]") {
  auto const c2 = build_group(FamilySpec::cyclic(2));
  auto const m = make_module(AbelianPGroup{3, {1}}, c2, {1}, {{{2}}});
  CHECK(apply_ring_element(m, RingElement::element(c2, 0)) == identity_endo(m.base));
  CHECK(apply_ring_element(m, RingElement::norm(c2, whole_group(c2))) == zero_endo(m.base));
}

TEST_CASE("kernel and image examples", "[modules]") {
  AbelianPGroup const b{3, {2}};
  auto const s = substructure(b, EndoMatrix{{3}});
  CHECK(s.kernel == Invariants{3});
  CHECK(s.image == Invariants{3});
  CHECK(invariants_str(s.kernel) + invariants_str(s.image) == "[3][3]");
  auto const z = substructure(b, zero_endo(b));
  CHECK(z.kernel == Invariants{9});
  CHECK(z.image.empty());
  auto const id = substructure(b, identity_endo(b));
  CHECK(id.kernel.empty());
  CHECK(id.image == Invariants{9});
}

TEST_CASE("kernel and image match element enumeration", "[modules][property]") {
  Rng rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    std::uint64_t const p = trial % 3 == 0 ? 2 : trial % 3 == 1 ? 3 : 5;
    auto const b = random_base(p, rng, 3, p == 5 ? 2 : 3);
    if (b.order() > 20000) continue;
    // random well-defined endomorphism
    EndoMatrix e = zero_endo(b);
    for (std::size_t i = 0; i < b.rank(); ++i)
      for (std::size_t j = 0; j < b.rank(); ++j) {
        unsigned const gap = b.exponents[i] > b.exponents[j] ? b.exponents[i] - b.exponents[j] : 0;
        e[i][j] = draw(rng, b.modulus(i)) / ipow(p, gap) * ipow(p, gap) % b.modulus(i);
      }
    REQUIRE(hom_well_defined(b, b, e));
    std::set<ModVector> ker, im;
    for (auto const& x : elements(b)) {
      auto const y = act(b, e, x);
      im.insert(y);
      if (y == ModVector(b.rank(), 0)) ker.insert(x);
    }
    auto const s = substructure(b, e);
    INFO(b.str() << " trial " << trial);
    REQUIRE(torsion_profile(s.kernel, p) == torsion_profile(b, ker));
    REQUIRE(torsion_profile(s.image, p) == torsion_profile(b, im));
  }
}

TEST_CASE("Maschke complements", "[modules]") {
  auto const c2 = build_group(FamilySpec::cyclic(2));
  AbelianPGroup const f3sq{3, {1, 1}};
  auto const swap = make_module(f3sq, c2, {1}, {{{0, 1}, {1, 0}}});
  auto const r = maschke_complement(swap, {{1, 1}});
  REQUIRE(r.complement.size() == 1);
  CHECK(r.complement[0] == ModVector{1, 2});
  CHECK(maschke_complement(swap, {}).complement.size() == 2);
  CHECK(maschke_complement(swap, {{1, 0}, {0, 1}}).complement.empty());

  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = random_maschke_instance(rng);
    auto const& m = inst.module;
    auto const p = m.base.p;
    auto const res = maschke_complement(m, inst.sub);
    auto const s = rank_mod(inst.sub, p);
    auto const c = res.complement.size();
    INFO("trial " << trial);
    REQUIRE(s + c == m.base.rank());
    auto both = inst.sub;
    both.insert(both.end(), res.complement.begin(), res.complement.end());
    REQUIRE(rank_mod(both, p) == m.base.rank());
    for (auto const& a : m.action)
      for (auto const& v : res.complement) {
        auto ext = res.complement;
        ext.push_back(act(m.base, a, v));
        REQUIRE(rank_mod(ext, p) == c);
      }
  }
}

TEST_CASE("norm splitting", "[modules]") {
  auto const c2 = build_group(FamilySpec::cyclic(2));
  auto const neg = make_module(AbelianPGroup{5, {1}}, c2, {1}, {{{4}}});
  auto const r = norm_split(neg, RingElement::norm(c2, whole_group(c2)), 2);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.kernel == Invariants{5});
  CHECK(r.image.empty());

  auto const triv = trivial_module(AbelianPGroup{7, {2}}, c2);
  auto const three = norm_split(triv, RingElement::element(c2, 0, 3), 3);
  CHECK(three.verdict == Verdict::Pass);
  CHECK(three.kernel.empty());
  CHECK(three.image == Invariants{49});

  auto const c3 = build_group(FamilySpec::cyclic(3));
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    auto const m = random_cyclic_module(3, 7, rng);
    auto const rep = norm_split(m, RingElement::norm(c3, whole_group(c3)), 3);
    REQUIRE(rep.verdict == Verdict::Pass);
    REQUIRE(invariants_order(rep.kernel) * invariants_order(rep.image) == m.base.order());
  }
  // 1 + 2σ is not idempotent up to scale: hypothesis check fires
  auto const bad = norm_split(neg, RingElement::element(c2, 0) + RingElement::element(c2, 1, 2), 2);
  CHECK(bad.verdict == Verdict::HypothesisViolated);
}

TEST_CASE("Klein four decomposition", "[modules]") {
  auto const v4 = build_group(FamilySpec::klein_four());
  auto const zero = v4_decompose(trivial_module(AbelianPGroup{3, {}}, v4));
  CHECK(zero.verdict == Verdict::Pass);
  for (auto const& part : zero.parts) CHECK(part.empty());

  AbelianPGroup const b{3, {1, 1, 1}};
  // element 1 = s, 2 = t, 3 = st; sigma_i is +1 on coordinate i and -1 elsewhere
  auto diag = [](std::uint64_t a, std::uint64_t c, std::uint64_t d) { return EndoMatrix{{a, 0, 0}, {0, c, 0}, {0, 0, d}}; };
  auto const m = make_module(b, v4, {1, 2}, {diag(1, 2, 2), diag(2, 1, 2)});
  auto const r = v4_decompose(m);
  CHECK(r.verdict == Verdict::Pass);
  for (auto const& part : r.parts) CHECK(part == Invariants{3});

  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    std::uint64_t const p = std::array<std::uint64_t, 3>{3, 5, 7}[trial % 3];
    auto const mod = random_v4_module(p, rng, 2, 2);
    auto const rep = v4_decompose(mod);
    REQUIRE(rep.verdict == Verdict::Pass);
    // oracle: the three images (1 + sigma_i) M, enumerated, have orders
    // multiplying to #M
    auto const elems = elements(mod.base);
    std::size_t prod = 1;
    for (Element s = 1; s < 4; ++s) {
      std::set<ModVector> img;
      for (auto const& x : elems) {
        auto y = act(mod.base, mod.action[s], x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] + x[i]) % mod.base.modulus(i);
        img.insert(y);
      }
      prod *= img.size();
    }
    REQUIRE(prod == elems.size());
  }
}

TEST_CASE("commutator action on cyclic modules", "[modules]") {
  auto const h8 = build_group(FamilySpec::quaternion(2));
  auto const acts = enumerate_cyclic_actions(h8, 5, 1);
  CHECK(acts.size() == 4);
  for (auto const& m : acts) {
    auto const r = grun_check(m);
    CHECK(r.commutator_trivial);
    CHECK(r.commutator_order == 2);
    CHECK(r.verdict == Verdict::Pass);
  }
  auto const a4 = enumerate_cyclic_actions(build_group(FamilySpec::alt4()), 7, 1);
  CHECK(a4.size() == 3);
  for (auto const& m : a4) CHECK(grun_check(m).verdict == Verdict::Pass);
  auto const ab = grun_check(trivial_module(AbelianPGroup{3, {2}}, build_group(FamilySpec::cyclic(4))));
  CHECK(ab.commutator_order == 1);
  CHECK(ab.verdict == Verdict::Pass);
}

TEST_CASE("dihedral span", "[modules]") {
  auto const d3 = build_group(FamilySpec::dihedral(3));
  AbelianPGroup const b{7, {1, 1}};
  auto const m = make_module(b, d3, {1, 3}, {{{0, 6}, {1, 6}}, {{0, 1}, {1, 0}}});
  auto const r = dihedral_span_check(m, {{1, 1}});
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.rank_span == 2);
  CHECK(dihedral_span_check(m, {}).verdict == Verdict::Pass);
  CHECK(dihedral_span_check(m, {{1, 0}}).verdict == Verdict::HypothesisViolated);

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto const inst = random_dihedral_instance(5, 19, rng);
    REQUIRE(dihedral_span_check(inst.module, inst.a_generators).verdict == Verdict::Pass);
  }
}

TEST_CASE("exhaustive cyclic scans at reduced bounds", "[modules][scan]") {
  auto const p15 = cyclic_scan(ScanKind::Prop15, ScanBounds{3, 3, 6});
  CHECK(p15.extremal == 3);
  auto const c17 = cyclic_scan(ScanKind::Cor17, ScanBounds{2, 3, 6});
  CHECK(c17.extremal == 1);
  CHECK_FALSE(c17.witness.empty());
  auto const p16 = cyclic_scan(ScanKind::Prop16, ScanBounds{2, 3, 5});
  CHECK(p16.extremal == 2);
  CHECK(p16.text() == cyclic_scan(ScanKind::Prop16, ScanBounds{2, 3, 5}, 2).text());
}
