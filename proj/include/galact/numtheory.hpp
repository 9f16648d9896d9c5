#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "galact/error.hpp"

namespace galact {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
  if (n == 1) return 0;
  std::uint64_t result = 1;
  base %= n;
  while (exp != 0) {
    if (exp & 1U) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1U;
  }
  return result;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Distinct prime divisors, ascending.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Exponent of p in n (n > 0).
inline unsigned valuation(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Smallest f >= 1 with p^f = 1 (mod n).
inline unsigned mult_order(std::uint64_t p, std::uint64_t n) {
  if (n == 0 || std::gcd(p, n) != 1) {
    throw DomainError("mult_order: p and n must be coprime");
  }
  if (n == 1) return 1;
  std::uint64_t x = p % n;
  unsigned f = 1;
  while (x != 1) {
    x = mulmod(x, p, n);
    ++f;
  }
  return f;
}

struct SignedOrder {
  unsigned f;
  int sign;  // +1 or -1: which of p^f = +1 / -1 (mod n) is attained first
};

/// Smallest f >= 1 with p^f = +-1 (mod n). For n <= 2 the two signs
/// coincide and +1 is reported.
inline SignedOrder pm_order(std::uint64_t p, std::uint64_t n) {
  if (n == 0 || std::gcd(p, n) != 1) {
    throw DomainError("pm_order: p and n must be coprime");
  }
  if (n <= 2) return {1, +1};
  std::uint64_t x = p % n;
  unsigned f = 1;
  while (x != 1 && x != n - 1) {
    x = mulmod(x, p, n);
    ++f;
  }
  return {f, x == 1 ? +1 : -1};
}

}  // namespace galact
