#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "galact/characters.hpp"
#include "galact/error.hpp"
#include "galact/groups.hpp"

namespace galact {

/// d x d matrix over F_p, d <= 2, row-major in a fixed array.
using SmallMat = std::array<std::uint32_t, 4>;

/// One equivalence class of irreducible F_p-representations found by search.
struct BruteRep {
  std::vector<SmallMat> generator_images;  // canonical (smallest) member of the class
  std::vector<std::uint64_t> traces;       // per conjugacy class, in F_p
  bool faithful = false;
};

namespace detail {

struct SmallMatOps {
  std::uint32_t p;
  unsigned d;

  SmallMat identity() const { return d == 1 ? SmallMat{1, 0, 0, 0} : SmallMat{1, 0, 0, 1}; }
  SmallMat mul(SmallMat const& a, SmallMat const& b) const {
    if (d == 1) return {a[0] * b[0] % p, 0, 0, 0};
    return {(a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p, (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p};
  }
  std::uint32_t det(SmallMat const& a) const {
    if (d == 1) return a[0];
    return (a[0] * a[3] % p + p * p - a[1] * a[2] % p) % p;
  }
  SmallMat inv(SmallMat const& a) const {
    std::uint32_t const di = static_cast<std::uint32_t>(powmod(det(a), p - 2, p));
    if (d == 1) return {di, 0, 0, 0};
    return {a[3] * di % p, (p - a[1]) % p * di % p, (p - a[2]) % p * di % p, a[0] * di % p};
  }
  std::uint32_t trace(SmallMat const& a) const { return d == 1 ? a[0] : (a[0] + a[3]) % p; }

  std::vector<SmallMat> general_linear() const {
    std::vector<SmallMat> out;
    if (d == 1) {
      for (std::uint32_t a = 1; a < p; ++a) out.push_back({a, 0, 0, 0});
      return out;
    }
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c)
          for (std::uint32_t e = 0; e < p; ++e) {
            SmallMat m{a, b, c, e};
            if (det(m) != 0) out.push_back(m);
          }
    return out;
  }

  /// No common invariant line (vacuous for d = 1).
  bool irreducible(std::vector<SmallMat> const& mats) const {
    if (d == 1) return true;
    auto fixes = [&](std::uint32_t x, std::uint32_t y) {
      return std::all_of(mats.begin(), mats.end(), [&](SmallMat const& m) {
        std::uint32_t const u = (m[0] * x + m[1] * y) % p, v = (m[2] * x + m[3] * y) % p;
        return (x * v + p * p - y * u) % p == 0;
      });
    };
    if (fixes(0, 1)) return false;
    for (std::uint32_t t = 0; t < p; ++t)
      if (fixes(1, t)) return false;
    return true;
  }
};

inline std::uint64_t tuple_key(std::vector<SmallMat> const& mats, SmallMatOps const& ops) {
  std::uint64_t key = 0;
  for (auto const& m : mats)
    for (unsigned i = 0; i < ops.d * ops.d; ++i) key = key * ops.p + m[i];
  return key;
}

/// Greedy generating set: repeatedly add the first element outside the
/// current subgroup, preferring elements of large order.
inline std::vector<Element> small_generating_set(Group const& g) {
  std::vector<Element> order_sorted(g.order());
  std::iota(order_sorted.begin(), order_sorted.end(), Element{0});
  std::stable_sort(order_sorted.begin(), order_sorted.end(),
                   [&](Element a, Element b) { return g.element_order(a) > g.element_order(b); });
  std::vector<Element> gens;
  Subgroup h = trivial_subgroup(g);
  while (h.order() < g.order()) {
    Element best = 0;
    std::size_t best_size = 0;
    for (auto x : order_sorted) {
      if (h.contains(x)) continue;
      auto trial = gens;
      trial.push_back(x);
      auto const sz = generate_subgroup(g, trial).order();
      if (sz > best_size) {
        best_size = sz;
        best = x;
      }
    }
    gens.push_back(best);
    h = generate_subgroup(g, gens);
  }
  return gens;
}

}  // namespace detail

/// All irreducible d-dimensional representations of g over F_p (d <= 2), up
/// to equivalence, by exhaustive search over generator images in GL_d(F_p).
/// Equivalence is simultaneous conjugacy; each class is reported by its
/// smallest generator tuple, sorted.
inline std::vector<BruteRep> brute_force_reps(Group const& g, std::uint64_t p, unsigned d) {
  detail::require_coprime(g, p);
  if (d < 1 || d > 2) throw DomainError("brute_force_reps supports d in {1, 2}");
  if (p > 1000) throw DomainError("brute_force_reps: p too large");
  detail::SmallMatOps ops{static_cast<std::uint32_t>(p), d};
  auto const gl = ops.general_linear();
  auto const gens = detail::small_generating_set(g);
  double space = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) space *= static_cast<double>(gl.size());
  if (space > 1e8) throw DomainError("brute_force_reps: search space exceeds 10^8");

  auto const cc = conjugacy_classes(g);
  std::unordered_set<std::uint64_t> seen;
  std::vector<BruteRep> out;
  std::vector<std::size_t> idx(gens.size(), 0);
  std::vector<SmallMat> image(g.order());
  std::vector<bool> assigned(g.order());

  // BFS over the Cayley graph; fails on the first inconsistent edge
  auto extend = [&](std::vector<SmallMat> const& gen_images) {
    std::fill(assigned.begin(), assigned.end(), false);
    std::vector<Element> queue{g.identity()};
    image[g.identity()] = ops.identity();
    assigned[g.identity()] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Element const x = queue[i];
      for (std::size_t s = 0; s < gens.size(); ++s) {
        Element const y = g.mul(x, gens[s]);
        auto const m = ops.mul(image[x], gen_images[s]);
        if (!assigned[y]) {
          assigned[y] = true;
          image[y] = m;
          queue.push_back(y);
        } else if (image[y] != m) {
          return false;
        }
      }
    }
    return true;
  };

  while (true) {
    std::vector<SmallMat> tuple;
    for (auto i : idx) tuple.push_back(gl[i]);
    auto const key = detail::tuple_key(tuple, ops);
    if (!seen.count(key) && ops.irreducible(tuple) && extend(tuple)) {
      BruteRep rep;
      for (std::size_t c = 0; c < cc.size(); ++c) rep.traces.push_back(ops.trace(image[cc.representative(c)]));
      std::size_t kernel = 0;
      for (Element x = 0; x < g.order(); ++x) kernel += image[x] == ops.identity();
      rep.faithful = kernel == 1;
      std::uint64_t best_key = key;
      rep.generator_images = tuple;
      for (auto const& pm : gl) {
        auto const pinv = ops.inv(pm);
        std::vector<SmallMat> conj;
        for (auto const& m : tuple) conj.push_back(ops.mul(ops.mul(pm, m), pinv));
        auto const ck = detail::tuple_key(conj, ops);
        seen.insert(ck);
        if (ck < best_key) {
          best_key = ck;
          rep.generator_images = conj;
        }
      }
      out.push_back(std::move(rep));
    }
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == gl.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  std::sort(out.begin(), out.end(), [&](BruteRep const& a, BruteRep const& b) {
    return detail::tuple_key(a.generator_images, ops) < detail::tuple_key(b.generator_images, ops);
  });
  return out;
}

}  // namespace galact
