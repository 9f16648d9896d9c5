// Walks through the library on A4 and D5: characters over F_p, Galois
// orbits, the rank modulus, and a class-group record check.

#include <iostream>

#include "galact/galact.hpp"

int main() {
  using namespace galact;

  auto const a4 = build_group(FamilySpec::alt4());
  std::cout << a4.name() << ": order " << a4.order() << ", " << conjugacy_classes(a4).size() << " classes\n";

  for (std::uint64_t p : {5, 7, 11}) {
    auto const table = character_table(a4, p);
    std::cout << "p = " << p << ": E = F_" << p << "^" << table.field.degree() << ", F_p-irreducible degrees";
    for (auto const& irr : fp_irreducibles(table)) std::cout << ' ' << irr.degree << (irr.faithful ? "*" : "");
    std::cout << ", rank modulus " << rank_constraint_from_table(table).modulus << '\n';
  }

  auto const d5 = FamilySpec::dihedral(5);
  for (std::uint64_t p : {3, 11, 19}) {
    auto const rc = rank_modulus(build_group(d5), p);
    std::cout << format_rank(rc) << "  closed form " << closed_form_modulus(d5, p).modulus << '\n';
  }

  auto const records = parse_records(
      "label,degree,disc,invariants,context\n"
      "b7,5,8755681,3;3,D5-subfield\n"
      "b19,5,1447574209,20;4,D5-subfield\n");
  for (auto const& r : records) std::cout << format_report_text(check_record(r));
  return 0;
}
