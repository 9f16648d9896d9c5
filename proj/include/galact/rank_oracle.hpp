#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "galact/characters.hpp"
#include "galact/error.hpp"
#include "galact/groups.hpp"
#include "galact/numtheory.hpp"

namespace galact {

struct FaithfulOrbit {
  unsigned degree;  // d, degree of each E-irreducible member
  unsigned r;       // orbit size
  bool operator==(FaithfulOrbit const&) const = default;
};

/// What the action of Gamma forces on the p-rank of a relative class group,
/// assuming p does not divide #Gamma and Cl_p(K/F) = 1 for every proper
/// normal subextension K/F.
struct RankConstraint {
  enum class Status { Constrained, NoFaithfulCharacter };

  std::string group;
  std::uint64_t p = 0;
  Status status = Status::Constrained;
  std::vector<FaithfulOrbit> faithful_orbits;
  bool uniform = true;
  /// r*d for uniform data, gcd of the r*d otherwise; 0 without faithful characters.
  std::uint64_t modulus = 0;
  std::string hypothesis_note;
};

inline constexpr char const* kRankHypothesis =
    "requires p not dividing #Gamma and Cl_p(K/F) = 1 for every normal subextension F <= K < L";

inline RankConstraint rank_constraint_from_table(CharacterTable const& t) {
  RankConstraint rc;
  rc.group = t.group.name();
  rc.p = t.prime();
  rc.hypothesis_note = kRankHypothesis;
  for (auto const& orbit : galois_orbits(t)) {
    if (orbit.faithful) rc.faithful_orbits.push_back({orbit.degree, orbit.r});
  }
  if (rc.faithful_orbits.empty()) {
    rc.status = RankConstraint::Status::NoFaithfulCharacter;
    rc.uniform = false;
    return rc;
  }
  for (auto const& o : rc.faithful_orbits) {
    rc.modulus = std::gcd(rc.modulus, std::uint64_t{o.degree} * o.r);
    if (!(o == rc.faithful_orbits.front())) rc.uniform = false;
  }
  return rc;
}

/// Rank-divisibility modulus read off the faithful F_p-irreducibles of g.
inline RankConstraint rank_modulus(Group const& g, std::uint64_t p) {
  return rank_constraint_from_table(character_table(g, p));
}

/// True iff some E-irreducible character is faithful. For groups of prime
/// power order this is cross-checked against cyclicity of the center.
inline bool has_faithful_irreducible(Group const& g, std::uint64_t p) {
  auto const t = character_table(g, p);
  bool any = false;
  for (std::size_t i = 0; i < t.rows.size() && !any; ++i) any = character_kernel(t, i).faithful;
  auto const primes = prime_divisors(g.order());
  if (primes.size() == 1 && any != is_cyclic(g, center(g))) {
    throw InvariantViolation("faithful irreducible existence disagrees with cyclicity of the center");
  }
  return any;
}

struct ClosedFormModulus {
  std::uint64_t modulus = 0;
  /// Set for the dihedral p = 2 case, which is only asserted when
  /// 2^f = -1 (mod n).
  bool p2_caveat = false;
};

/// Table values: C_n: ord_n(p); D_n: 2 f with p^f = +-1 (mod n);
/// H_4n: 2 f with p^f = +-1 (mod 2n); 16.08: 2 ord_4(p); A4: 3.
inline ClosedFormModulus closed_form_modulus(FamilySpec const& spec, std::uint64_t p) {
  using Kind = FamilySpec::Kind;
  spec.validate();
  if (!is_prime(p)) throw DomainError("p must be prime");
  bool const dihedral_p2 = spec.kind == Kind::Dihedral && p == 2 && spec.n % 2 == 1;
  if (spec.order() % p == 0 && !dihedral_p2) throw DomainError("p divides the group order");
  switch (spec.kind) {
    case Kind::Cyclic: return {mult_order(p, spec.n), false};
    case Kind::Dihedral: return {2ULL * pm_order(p, spec.n).f, dihedral_p2};
    case Kind::GeneralizedQuaternion: return {2ULL * pm_order(p, 2ULL * spec.n).f, false};
    case Kind::Group16_08: return {2ULL * mult_order(p, 4), false};
    case Kind::Alt4: return {3, false};
    default: throw DomainError("no closed form for family " + spec.name());
  }
}

struct Corollary18 {
  unsigned f = 0;
  int sign = 0;
  bool valid = false;  // prediction asserted only when set
};

/// For an odd-degree n subfield of a D_n closure: r_p = 0 (mod f) with
/// p^f = +-1 (mod n), valid for p not dividing 2n, and for p = 2 when the
/// sign attained is -1.
inline Corollary18 corollary18_modulus(std::uint64_t n, std::uint64_t p) {
  if (n % 2 == 0 || n < 3) throw DomainError("corollary18_modulus needs odd n >= 3");
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (n % p == 0) return {0, 0, false};
  auto const po = pm_order(p, n);
  bool const valid = p != 2 || po.sign == -1;
  return {po.f, po.sign, valid};
}

/// rank Cl_p(L/K) = 0 mod 2 (p = 1 mod 4) or 0 mod 4 (p = 3 mod 4) for
/// Gal(L/k) = 16.08; cross-checked against both oracle paths.
inline std::uint64_t prop19_cor20_modulus(std::uint64_t p) {
  if (p == 2 || !is_prime(p)) throw DomainError("prop19_cor20_modulus needs an odd prime");
  std::uint64_t const m = p % 4 == 1 ? 2 : 4;
  auto const spec = FamilySpec::group16_08();
  auto const closed = closed_form_modulus(spec, p).modulus;
  auto const charac = rank_modulus(build_group(spec), p).modulus;
  if (closed != m || charac != m) throw InvariantViolation("16.08 modulus disagrees between oracle paths");
  return m;
}

/// `group p modulus uniform faithful_orbit_list`; orbits print as (d,r).
inline std::string format_rank(RankConstraint const& rc) {
  std::ostringstream os;
  os << rc.group << ' ' << rc.p << ' ' << rc.modulus << ' ' << (rc.uniform ? 1 : 0) << ' ';
  if (rc.faithful_orbits.empty()) os << "none";
  for (std::size_t i = 0; i < rc.faithful_orbits.size(); ++i) {
    os << (i ? "," : "") << '(' << rc.faithful_orbits[i].degree << ',' << rc.faithful_orbits[i].r << ')';
  }
  return os.str();
}

}  // namespace galact
