#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "galact/galact.hpp"

namespace galact::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kUsage = 2, kInternal = 3 };

inline std::string read_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Family shorthand (C12, D5, H8, V4, A4, G16_8, C2xC4) or a Cayley-table file.
inline Group resolve_group(std::string const& arg) {
  if (std::filesystem::is_regular_file(arg)) return parse_group_text(read_file(arg));
  return build_group(FamilySpec::parse(arg));
}

struct Table14Row {
  std::string family;
  std::uint64_t p;
  std::uint64_t closed, family_path, general_path;
  bool ok() const { return closed == family_path && closed == general_path; }
};

/// Families with closed-form moduli, at the sizes exercised by the suite.
inline std::vector<FamilySpec> table14_families() {
  std::vector<FamilySpec> out;
  for (unsigned n = 1; n <= 30; ++n) out.push_back(FamilySpec::cyclic(n));
  for (unsigned n = 3; n <= 15; ++n) out.push_back(FamilySpec::dihedral(n));
  for (unsigned n = 2; n <= 8; ++n) out.push_back(FamilySpec::quaternion(n));
  out.push_back(FamilySpec::group16_08());
  out.push_back(FamilySpec::alt4());
  return out;
}

/// closed form vs. both character-theoretic paths for every family and
/// every prime p <= pmax not dividing the order.
inline std::vector<Table14Row> table14(std::uint64_t pmax, unsigned jobs) {
  std::vector<std::pair<FamilySpec, std::uint64_t>> work;
  for (auto const& spec : table14_families())
    for (std::uint64_t p = 2; p <= pmax; ++p)
      if (is_prime(p) && spec.order() % p != 0) work.emplace_back(spec, p);
  return parallel_map(work.size(), jobs, [&](std::size_t i) {
    auto const& [spec, p] = work[i];
    auto const closed = closed_form_modulus(spec, p).modulus;
    auto const fam = rank_constraint_from_table(character_table_family(spec, p)).modulus;
    auto const gen = rank_constraint_from_table(character_table_general(build_group(spec), p)).modulus;
    return Table14Row{spec.name(), p, closed, fam, gen};
  });
}

inline void print_group(Group const& g, bool cayley, std::ostream& out) {
  auto const cc = conjugacy_classes(g);
  auto const a = subgroup_analysis(g);
  out << "group " << g.name() << "\norder " << g.order() << "\nabelian " << (g.is_abelian() ? "yes" : "no")
      << "\nexponent " << a.exponent << "\nclasses " << cc.size() << "\nclass_sizes";
  for (auto const& c : cc.classes) out << ' ' << c.size();
  out << "\ncenter " << a.center.order() << (is_cyclic(g, a.center) ? " cyclic" : " noncyclic") << "\ncommutator "
      << a.commutator.order() << "\nabelianization";
  if (a.abelianization.empty()) out << " 1";
  for (auto d : a.abelianization) out << ' ' << d;
  out << "\nnormal_subgroups";
  for (auto const& n : a.normal_subgroups) out << ' ' << n.order();
  out << '\n';
  if (cayley) out << to_text(g);
}

inline void print_chartable(CharacterTable const& t, std::ostream& out) {
  out << "field " << t.field.serialize() << '\n' << format_table(t);
  out << "orbits";
  for (auto const& o : galois_orbits(t)) {
    out << " {";
    for (std::size_t i = 0; i < o.members.size(); ++i) out << (i ? "," : "") << o.members[i];
    out << "}";
  }
  out << "\nfp_irreducibles\n";
  for (auto const& f : fp_irreducibles(t)) {
    out << f.degree << ' ' << (f.faithful ? 1 : 0);
    for (auto v : f.values) out << ' ' << v;
    out << '\n';
  }
}

struct Options {
  std::string group, family, data, format = "text", kind, field_line;
  std::uint64_t prime = 0, pmax = 50, seed = 0;
  unsigned jobs = 1, count = 0, brute = 0, exponent = 1;
  std::int64_t bmin = 0, bmax = 19;
  bool general = false, cayley = false, closed = false;
};

inline int cmd_rank(Options const& o, std::ostream& out) {
  if (o.prime == 0) throw CLI::ValidationError("--prime", "rank needs --prime");
  auto const name = o.family.empty() ? o.group : o.family;
  if (name.empty()) throw CLI::ValidationError("group", "rank needs a group or --family");
  auto const g = resolve_group(name);
  auto const rc = rank_modulus(g, o.prime);
  out << "group " << rc.group << "\nprime " << rc.p << "\nmodulus " << rc.modulus << "\nuniform " << (rc.uniform ? "yes" : "no")
      << "\nfaithful_orbits";
  if (rc.faithful_orbits.empty()) out << " none";
  for (auto const& f : rc.faithful_orbits) out << " (d=" << f.degree << ",r=" << f.r << ')';
  out << "\nnote " << rc.hypothesis_note << '\n';
  if (o.closed) {
    if (!g.family()) throw DomainError("closed form needs a named family");
    auto const c = closed_form_modulus(*g.family(), o.prime);
    out << "closed_form " << c.modulus << (c.p2_caveat ? " (asserted only when 2^f = -1 mod n)" : "") << '\n';
    if (c.modulus != rc.modulus) return kFail;
  }
  return kOk;
}

inline int cmd_scan(Options const& o, std::ostream& out) {
  auto const& k = o.kind;
  if (k == "prop15" || k == "prop16" || k == "cor17") {
    ScanBounds b;
    if (o.prime) b.p = o.prime;
    auto const kind = k == "prop15" ? ScanKind::Prop15 : k == "prop16" ? ScanKind::Prop16 : ScanKind::Cor17;
    if (kind != ScanKind::Prop15) b.max_exponent = 8;
    auto const rep = cyclic_scan(kind, b, o.jobs);
    out << rep.text();
    std::uint64_t const expected = kind == ScanKind::Prop15 ? b.p : kind == ScanKind::Prop16 ? 2 : 1;
    return rep.extremal == expected ? kOk : kFail;
  }
  if (k == "grun") {
    if (o.prime == 0) throw CLI::ValidationError("--prime", "grun needs --prime");
    auto const g = resolve_group(o.family.empty() ? (o.group.empty() ? std::string("H8") : o.group) : o.family);
    auto const mods = enumerate_cyclic_actions(g, o.prime, o.exponent);
    auto const gens = detail::small_generating_set(g);
    bool fail = false;
    for (auto const& m : mods) {
      auto const r = grun_check(m);
      fail |= r.verdict != Verdict::Pass;
      out << m.serialize(gens) << " commutator=" << r.commutator_order
          << " acts_trivially=" << (r.commutator_trivial ? "yes" : "no") << " norm_exponent=" << r.norm_image_exponent << ' '
          << verdict_str(r.verdict) << '\n';
    }
    out << "actions " << mods.size() << '\n';
    return fail ? kFail : kOk;
  }
  Rng rng(o.seed);
  std::size_t pass = 0, total = 0;
  if (k == "v4") {
    total = o.count ? o.count : 200;
    static constexpr std::uint64_t primes[] = {3, 5, 7};
    for (std::size_t i = 0; i < total; ++i) {
      auto const p = o.prime ? o.prime : primes[i % 3];
      auto const m = random_v4_module(p, rng);
      auto const r = v4_decompose(m);
      pass += r.verdict == Verdict::Pass;
      out << i << ' ' << m.base.str() << " parts=" << invariants_str(r.parts[0]) << invariants_str(r.parts[1])
          << invariants_str(r.parts[2]) << ' ' << verdict_str(r.verdict) << '\n';
    }
  } else if (k == "maschke") {
    total = o.count ? o.count : 100;
    for (std::size_t i = 0; i < total; ++i) {
      auto const inst = random_maschke_instance(rng);
      auto const r = maschke_complement(inst.module, inst.sub);
      bool const ok = r.sub_basis.size() + r.complement.size() == inst.module.base.rank();
      pass += ok;
      out << i << ' ' << inst.module.group.name() << " p=" << inst.module.base.p << " dim=" << inst.module.base.rank()
          << " sub=" << r.sub_basis.size() << " complement=" << r.complement.size() << ' ' << (ok ? "PASS" : "FAIL") << '\n';
    }
  } else if (k == "dihedral") {
    total = o.count ? o.count : 50;
    auto const spec = FamilySpec::parse(o.family.empty() ? std::string("D5") : o.family);
    if (spec.kind != FamilySpec::Kind::Dihedral) throw DomainError("dihedral scan needs a D_n family");
    std::uint64_t const p = o.prime ? o.prime : 19;
    for (std::size_t i = 0; i < total; ++i) {
      auto const inst = random_dihedral_instance(spec.n, p, rng);
      auto const r = dihedral_span_check(inst.module, inst.a_generators);
      pass += r.verdict == Verdict::Pass;
      out << i << ' ' << inst.module.base.str() << " rank_A=" << r.rank_a << " rank_span=" << r.rank_span << ' '
          << verdict_str(r.verdict) << '\n';
    }
  } else if (k == "normsplit") {
    total = o.count ? o.count : 50;
    std::uint64_t const p = o.prime ? o.prime : 7;
    for (std::size_t i = 0; i < total; ++i) {
      auto const m = random_cyclic_module(3, p, rng);
      auto const r = norm_split(m, RingElement::norm(m.group, whole_group(m.group)), 3);
      pass += r.verdict == Verdict::Pass;
      out << i << ' ' << m.base.str() << " kernel=" << invariants_str(r.kernel) << " image=" << invariants_str(r.image) << ' '
          << verdict_str(r.verdict) << '\n';
    }
  } else {
    throw CLI::ValidationError("--kind", "unknown scan kind " + k);
  }
  out << "seed " << o.seed << " passed " << pass << '/' << total << '\n';
  return pass == total ? kOk : kFail;
}

inline int cmd_verify(Options const& o, std::ostream& out) {
  auto const records = parse_records(read_file(o.data));
  auto const reports = parallel_map(records.size(), o.jobs, [&](std::size_t i) { return check_record(records[i]); });
  bool fail = false;
  if (o.format == "tsv") out << "label\tp\trank\tmodulus\tverdict\n";
  for (auto const& r : reports) {
    fail |= r.any_fail();
    out << (o.format == "tsv" ? format_report_tsv(r) : format_report_text(r));
  }
  return fail ? kFail : kOk;
}

inline int cmd_kondo(Options const& o, std::ostream& out) {
  std::vector<ClassGroupRecord> table;
  if (!o.data.empty()) table = parse_records(read_file(o.data));
  bool fail = false;
  for (auto const& row : kondo_table_check(o.bmin, o.bmax, table)) {
    out << format_kondo_row(row) << '\n';
    fail |= (row.disc_k && !row.divides) || (row.check && row.check->any_fail());
  }
  return fail ? kFail : kOk;
}

/// Entry point shared by the executable and the tests.
inline int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Galois-module constraints on class groups: groups, characters over F_p, rank constraints, module scans"};
  app.name("galact");
  app.require_subcommand(1, 1);
  Options o;

  auto* group = app.add_subcommand("group", "structure of a group");
  group->add_option("group", o.group, "family shorthand or Cayley-table file")->required();
  group->add_flag("--cayley", o.cayley, "also print the Cayley table");

  auto* chartable = app.add_subcommand("chartable", "character table over the splitting field of F_p");
  chartable->add_option("group", o.group, "family shorthand or Cayley-table file")->required();
  chartable->add_option("-p,--prime", o.prime, "characteristic")->required();
  auto* gen_flag = chartable->add_flag("--general", o.general, "force the general (eigenvector) method");
  auto* brute_opt = chartable->add_option("--brute", o.brute, "instead enumerate irreducible d-dim F_p-representations (d <= 2)");
  gen_flag->excludes(brute_opt);
  chartable->add_option("--field", o.field_line, "print the field for this serialized line instead")->excludes(gen_flag)->excludes(brute_opt);

  auto* rank = app.add_subcommand("rank", "rank-divisibility modulus of a Galois group at p");
  auto* rank_pos = rank->add_option("group", o.group, "family shorthand or Cayley-table file");
  rank->add_option("--family", o.family, "family shorthand")->excludes(rank_pos);
  rank->add_option("-p,--prime", o.prime, "prime")->required();
  rank->add_flag("--closed-form", o.closed, "also print the closed-form value and compare");

  auto* t14 = app.add_subcommand("table14", "closed forms against both character-theoretic paths");
  t14->add_option("--pmax", o.pmax, "largest prime")->capture_default_str();
  t14->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();

  auto* scan = app.add_subcommand("scan", "module-lab scans");
  scan->add_option("--kind", o.kind, "prop15|prop16|cor17|v4|maschke|dihedral|grun|normsplit")
      ->required()
      ->check(CLI::IsMember({"prop15", "prop16", "cor17", "v4", "maschke", "dihedral", "grun", "normsplit"}));
  scan->add_option("--seed", o.seed, "random seed")->capture_default_str();
  scan->add_option("--count", o.count, "number of random instances");
  scan->add_option("-p,--prime", o.prime, "prime");
  scan->add_option("--family", o.family, "group for dihedral/grun scans");
  scan->add_option("--exponent", o.exponent, "module exponent for grun")->capture_default_str();
  scan->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "check published class groups against the rank constraints");
  verify->add_option("--data", o.data, "CSV file")->required()->check(CLI::ExistingFile);
  verify->add_option("--format", o.format, "text|tsv")->check(CLI::IsMember({"text", "tsv"}))->capture_default_str();
  verify->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();

  auto* kondo = app.add_subcommand("kondo", "discriminants of the a = 1 quintic family against table disc K");
  kondo->add_option("--data", o.data, "class group CSV")->check(CLI::ExistingFile);
  kondo->add_option("--bmin", o.bmin)->capture_default_str();
  kondo->add_option("--bmax", o.bmax)->capture_default_str();

  std::vector<char const*> argv{"galact"};
  for (auto const& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e, out, err);
  } catch (CLI::ParseError const& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*group) {
      print_group(resolve_group(o.group), o.cayley, out);
    } else if (*chartable) {
      if (!o.field_line.empty()) {
        auto const f = FieldSpec::parse(o.field_line);
        out << f.serialize() << '\n';
        return kOk;
      }
      auto const g = resolve_group(o.group);
      if (o.brute) {
        auto const reps = brute_force_reps(g, o.prime, o.brute);
        for (auto const& r : reps) {
          out << "dim " << o.brute << " faithful " << (r.faithful ? 1 : 0) << " traces";
          for (auto t : r.traces) out << ' ' << t;
          out << '\n';
        }
        out << "classes " << reps.size() << '\n';
      } else {
        print_chartable(o.general ? character_table_general(g, o.prime) : character_table(g, o.prime), out);
      }
    } else if (*rank) {
      return cmd_rank(o, out);
    } else if (*t14) {
      std::size_t bad = 0;
      auto const rows = table14(o.pmax, o.jobs);
      for (auto const& r : rows) {
        out << r.family << ' ' << r.p << ' ' << r.closed << ' ' << r.family_path << ' ' << r.general_path << ' '
            << (r.ok() ? "OK" : "MISMATCH") << '\n';
        bad += !r.ok();
      }
      out << "cases " << rows.size() << " mismatches " << bad << '\n';
      return bad ? kFail : kOk;
    } else if (*scan) {
      return cmd_scan(o, out);
    } else if (*verify) {
      return cmd_verify(o, out);
    } else if (*kondo) {
      return cmd_kondo(o, out);
    }
  } catch (CLI::ValidationError const& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  } catch (InvariantViolation const& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (Error const& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace galact::cli
