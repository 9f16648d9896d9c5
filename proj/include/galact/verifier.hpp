#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/integer.hpp>

#include "galact/error.hpp"
#include "galact/numtheory.hpp"
#include "galact/polynomial.hpp"
#include "galact/rank_oracle.hpp"
#include "galact/smith.hpp"

namespace galact {

enum class RecordContext { DnSubfield, DnClosureOverQuadratic, H8Relative, Raw };

/// One published class group. Either full invariants (largest first) or,
/// when only the order is printed, its factorization with order_only set.
struct ClassGroupRecord {
  std::string label;
  unsigned degree = 0;
  std::optional<BigInt> disc;  // absent when not published
  std::vector<std::uint64_t> invariants;
  bool order_only = false;
  std::vector<std::pair<std::uint64_t, unsigned>> order_factors;  // set when order_only
  RecordContext context = RecordContext::Raw;
  unsigned dihedral_n = 0;  // n of D_n for the dihedral contexts
};

struct CheckEntry {
  std::uint64_t p = 0;
  unsigned rank = 0;  // p-rank, or ord_p(h) for order-only records
  std::uint64_t modulus = 0;
  enum class Verdict { Pass, Fail, Skip } verdict = Verdict::Skip;
  std::string reason;
};

struct CheckReport {
  std::string label;
  std::vector<CheckEntry> entries;  // one per prime dividing the order, ascending
  bool any_fail() const {
    return std::any_of(entries.begin(), entries.end(), [](CheckEntry const& e) { return e.verdict == CheckEntry::Verdict::Fail; });
  }
};

inline char const* verdict_str(CheckEntry::Verdict v) {
  switch (v) {
    case CheckEntry::Verdict::Pass: return "PASS";
    case CheckEntry::Verdict::Fail: return "FAIL";
    default: return "SKIP";
  }
}

namespace detail {

inline std::string trim(std::string s) {
  auto const b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto const e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(std::string const& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::uint64_t parse_u64(std::string const& s, std::size_t line, char const* what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 18)
    throw ParseError(std::string("malformed ") + what + " '" + s + "'", line);
  return std::stoull(s);
}

/// "D5-subfield", "Dn-closure-over-quadratic", "H8-relative", "raw".
inline std::pair<RecordContext, unsigned> parse_context(std::string const& s, unsigned degree, std::size_t line) {
  if (s == "H8-relative") return {RecordContext::H8Relative, 0};
  if (s == "raw") return {RecordContext::Raw, 0};
  auto dihedral = [&](std::string const& suffix, RecordContext ctx, unsigned default_n) -> std::optional<std::pair<RecordContext, unsigned>> {
    if (s.size() <= suffix.size() + 1 || s[0] != 'D' || s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0)
      return std::nullopt;
    auto const mid = s.substr(1, s.size() - suffix.size() - 1);
    unsigned const n = mid == "n" ? default_n : static_cast<unsigned>(parse_u64(mid, line, "dihedral order"));
    if (n < 3 || n % 2 == 0) throw ParseError("dihedral context needs odd n >= 3", line);
    return std::pair{ctx, n};
  };
  if (auto r = dihedral("-subfield", RecordContext::DnSubfield, degree)) {
    if (r->second != degree) throw ParseError("D_n-subfield context needs n = degree", line);
    return *r;
  }
  if (auto r = dihedral("-closure-over-quadratic", RecordContext::DnClosureOverQuadratic, degree / 2)) return *r;
  throw ParseError("unknown context '" + s + "'", line);
}

/// "h=2*3^2*7^2" -> [(2,1),(3,2),(7,2)]
inline std::vector<std::pair<std::uint64_t, unsigned>> parse_order_factors(std::string const& s, std::size_t line) {
  std::map<std::uint64_t, unsigned> acc;
  for (auto const& term : split(s.substr(2), '*')) {
    auto const caret = term.find('^');
    auto const base = parse_u64(term.substr(0, caret), line, "prime");
    unsigned const e = caret == std::string::npos ? 1U : static_cast<unsigned>(parse_u64(term.substr(caret + 1), line, "exponent"));
    if (!is_prime(base) || e == 0) throw ParseError("order factor must be a prime power", line);
    acc[base] += e;
  }
  return {acc.begin(), acc.end()};
}

}  // namespace detail

/// CSV with header `label,degree,disc,invariants,context`; '#' starts a
/// comment line, invariants are ';'-separated, disc may be '-' when
/// unpublished, and invariants of the form `h=2*5^4` give the order only.
inline std::vector<ClassGroupRecord> parse_records(std::string const& text) {
  std::vector<ClassGroupRecord> out;
  std::istringstream is(text);
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(is, raw)) {
    ++line;
    auto const s = detail::trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (!header) {
      if (s != "label,degree,disc,invariants,context") throw ParseError("expected header label,degree,disc,invariants,context", line);
      header = true;
      continue;
    }
    auto const f = detail::split(s, ',');
    if (f.size() != 5) throw ParseError("expected 5 fields", line);
    ClassGroupRecord r;
    r.label = f[0];
    if (r.label.empty()) throw ParseError("empty label", line);
    r.degree = static_cast<unsigned>(detail::parse_u64(f[1], line, "degree"));
    if (f[2] != "-") {
      bool const neg = !f[2].empty() && f[2][0] == '-';
      auto const digits = neg ? f[2].substr(1) : f[2];
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("malformed disc '" + f[2] + "'", line);
      BigInt d(digits);
      if (d == 0) throw ParseError("disc must be nonzero", line);
      r.disc = neg ? BigInt(-d) : d;
    }
    if (f[3].empty()) throw ParseError("empty invariants", line);
    if (f[3].rfind("h=", 0) == 0) {
      r.order_only = true;
      r.order_factors = detail::parse_order_factors(f[3], line);
    } else {
      for (auto const& v : detail::split(f[3], ';')) {
        auto const d = detail::parse_u64(v, line, "invariant");
        if (d == 0) throw ParseError("invariants must be positive", line);
        if (d > 1) r.invariants.push_back(d);
      }
      std::sort(r.invariants.rbegin(), r.invariants.rend());
    }
    std::tie(r.context, r.dihedral_n) = detail::parse_context(f[4], r.degree, line);
    out.push_back(std::move(r));
  }
  if (!header) throw ParseError("missing header", line);
  return out;
}

/// Primes dividing the group order, ascending.
inline std::vector<std::uint64_t> record_primes(ClassGroupRecord const& r) {
  std::vector<std::uint64_t> ps;
  if (r.order_only) {
    for (auto const& [q, e] : r.order_factors) ps.push_back(q);
  } else {
    for (auto d : r.invariants)
      for (auto q : prime_divisors(d)) ps.push_back(q);
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

/// ord_p of the order; for full invariants the sum of the valuations.
inline unsigned record_order_valuation(ClassGroupRecord const& r, std::uint64_t p) {
  unsigned v = 0;
  if (r.order_only) {
    for (auto const& [q, e] : r.order_factors)
      if (q == p) v += e;
  } else {
    for (auto d : r.invariants) v += valuation(d, p);
  }
  return v;
}

inline unsigned record_p_rank(ClassGroupRecord const& r, std::uint64_t p) {
  return static_cast<unsigned>(std::count_if(r.invariants.begin(), r.invariants.end(), [&](std::uint64_t d) { return d % p == 0; }));
}

inline CheckReport check_record(ClassGroupRecord const& r) {
  using V = CheckEntry::Verdict;
  CheckReport rep{r.label, {}};
  for (auto p : record_primes(r)) {
    CheckEntry e;
    e.p = p;
    switch (r.context) {
      case RecordContext::DnSubfield:
      case RecordContext::DnClosureOverQuadratic: {
        if (r.order_only) throw DomainError("check_record: dihedral contexts need full invariants");
        e.rank = record_p_rank(r, p);
        unsigned const n = r.dihedral_n;
        if (p != 2 && (2ULL * n) % p == 0) {
          e.reason = "p divides 2n";
          break;
        }
        auto const c = corollary18_modulus(n, p);
        if (!c.valid) {
          e.reason = "p = 2 with 2^f = +1 (mod n)";
          break;
        }
        e.modulus = r.context == RecordContext::DnSubfield ? c.f : 2ULL * c.f;
        e.verdict = e.rank % e.modulus == 0 ? V::Pass : V::Fail;
        break;
      }
      case RecordContext::H8Relative:
        e.rank = record_order_valuation(r, p);
        if (p == 2) {
          e.reason = "p divides #H8";
          break;
        }
        e.modulus = 2;
        e.verdict = e.rank % 2 == 0 ? V::Pass : V::Fail;
        break;
      case RecordContext::Raw:
        e.rank = r.order_only ? record_order_valuation(r, p) : record_p_rank(r, p);
        e.reason = "no prediction for raw records";
        break;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

/// TSV `label p rank modulus verdict`, one line per entry.
inline std::string format_report_tsv(CheckReport const& rep) {
  std::string s;
  for (auto const& e : rep.entries)
    s += rep.label + '\t' + std::to_string(e.p) + '\t' + std::to_string(e.rank) + '\t' +
         (e.modulus ? std::to_string(e.modulus) : "-") + '\t' + verdict_str(e.verdict) + '\n';
  return s;
}

inline std::string format_report_text(CheckReport const& rep) {
  if (rep.entries.empty()) return rep.label + ": trivial p-parts, nothing to check\n";
  std::string s;
  for (auto const& e : rep.entries) {
    s += rep.label + ": p=" + std::to_string(e.p) + " rank=" + std::to_string(e.rank) +
         " modulus=" + (e.modulus ? std::to_string(e.modulus) : "-") + ' ' + verdict_str(e.verdict);
    if (!e.reason.empty()) s += " (" + e.reason + ")";
    s += '\n';
  }
  return s;
}

// ---------------------------------------------------------------------------
// Polynomials over Z

using IntPoly = std::vector<BigInt>;  // ascending coefficients

/// x^5 + (a-3)x^4 + (b-a+3)x^3 + (a^2-a-1-2b)x^2 + b x + a
inline IntPoly kondo_polynomial(BigInt const& a, BigInt const& b) {
  return {a, b, a * a - a - 1 - 2 * b, b - a + 3, a - 3, BigInt(1)};
}

inline std::string poly_str(IntPoly const& f) {
  std::string s;
  for (std::size_t k = f.size(); k-- > 0;) {
    auto const& c = f[k];
    if (c == 0) continue;
    BigInt const mag = c < 0 ? BigInt(-c) : c;
    s += c < 0 ? "-" : (s.empty() ? "" : "+");
    if (mag != 1 || k == 0) s += mag.str();
    if (k >= 1) s += "x";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

/// Sylvester-matrix resultant.
inline BigInt resultant(IntPoly const& f, IntPoly const& g) {
  std::size_t const m = f.size() - 1, n = g.size() - 1;
  std::size_t const size = m + n;
  IntMatrix s(size, std::vector<BigInt>(size, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) s[i][i + k] = f[m - k];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) s[n + i][i + k] = g[n - k];
  return bareiss_determinant(s);
}

/// disc f = (-1)^{n(n-1)/2} Res(f, f') / a_n.
inline BigInt poly_discriminant(IntPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.size() < 3) throw DomainError("poly_discriminant: degree must be at least 2");
  std::size_t const n = f.size() - 1;
  IntPoly df(n);
  for (std::size_t k = 1; k <= n; ++k) df[k - 1] = f[k] * static_cast<long long>(k);
  BigInt res = resultant(f, df);
  if (res % f.back() != 0) throw InvariantViolation("poly_discriminant: resultant not divisible by the leading coefficient");
  res /= f.back();
  return (n * (n - 1) / 2) % 2 == 0 ? res : BigInt(-res);
}

struct KondoRow {
  std::int64_t b = 0;
  IntPoly poly;
  BigInt poly_disc;
  std::optional<BigInt> disc_k;
  bool divides = false;
  std::optional<BigInt> index;  // sqrt(disc f / disc K) when a perfect square
  std::optional<CheckReport> check;
};

/// For a = 1 and each b: the polynomial, its discriminant, divisibility by
/// the tabulated disc K (record label "b<b>") and the class-group check.
inline std::vector<KondoRow> kondo_table_check(std::int64_t b_lo, std::int64_t b_hi, std::vector<ClassGroupRecord> const& table) {
  std::vector<KondoRow> rows;
  for (std::int64_t b = b_lo; b <= b_hi; ++b) {
    KondoRow row;
    row.b = b;
    row.poly = kondo_polynomial(1, b);
    row.poly_disc = poly_discriminant(row.poly);
    auto const it = std::find_if(table.begin(), table.end(), [&](ClassGroupRecord const& r) { return r.label == "b" + std::to_string(b); });
    if (it != table.end()) {
      row.disc_k = it->disc;
      if (it->disc) {
        row.divides = row.poly_disc % *it->disc == 0;
        if (row.divides) {
          BigInt const q = row.poly_disc / *it->disc;
          if (q > 0) {
            BigInt const r = boost::multiprecision::sqrt(q);
            if (r * r == q) row.index = r;
          }
        }
      }
      row.check = check_record(*it);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string format_kondo_row(KondoRow const& r) {
  std::ostringstream os;
  os << "b=" << r.b << " f=" << poly_str(r.poly) << " disc(f)=" << r.poly_disc;
  if (r.disc_k) {
    os << " discK=" << *r.disc_k << " divides=" << (r.divides ? "yes" : "NO");
    if (r.index) os << " index=" << *r.index;
  } else {
    os << " discK=-";
  }
  if (r.check) {
    os << " checks=";
    if (r.check->entries.empty()) os << "none";
    for (std::size_t i = 0; i < r.check->entries.size(); ++i) {
      auto const& e = r.check->entries[i];
      os << (i ? "," : "") << e.p << ':' << verdict_str(e.verdict);
    }
  }
  return os.str();
}

}  // namespace galact
