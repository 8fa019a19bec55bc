#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "stablecut/util.hpp"

namespace stablecut {

/// Family of subsets of [0,n) such that for all disjoint A, B with |A| <= p and
/// |B| <= q some member contains A and misses B. For p+q <= n this is the usual
/// exact-size property (pad A and B up); for p+q > n the <=-size form is the
/// one downstream constructions rely on, so it is what gets verified.
struct LopsidedUniversalFamily {
  int universe = 0;
  int p = 0;
  int q = 0;
  std::vector<std::uint32_t> sets;  // bitmasks over the universe

  bool covers(std::uint32_t a, std::uint32_t b) const {
    for (std::uint32_t f : sets)
      if ((a & ~f) == 0 && (f & b) == 0) return true;
    return false;
  }
};

namespace detail {

template <typename F>
void for_each_subset_of(const std::vector<int>& pool, int size, F&& f) {
  for_each_combination(static_cast<int>(pool.size()), size, [&](const std::vector<int>& idx) {
    std::uint32_t m = 0;
    for (int i : idx) m |= 1u << pool[i];
    f(m);
  });
}

/// The pairs that dominate all (A,B) with |A| <= p, |B| <= q: exact-size pairs
/// when the universe fits both, otherwise (A, complement) along the frontier.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> lopsided_test_pairs(int n, int p, int q) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  if (p + q <= n) {
    for_each_subset_of(all, p, [&](std::uint32_t a) {
      std::vector<int> rest;
      for (int v = 0; v < n; ++v)
        if (!(a >> v & 1u)) rest.push_back(v);
      for_each_subset_of(rest, q, [&](std::uint32_t b) { pairs.emplace_back(a, b); });
    });
  } else {
    for (int size = std::max(0, n - q); size <= std::min(p, n); ++size)
      for_each_subset_of(all, size, [&](std::uint32_t a) { pairs.emplace_back(a, full & ~a); });
  }
  return pairs;
}

}  // namespace detail

/// Builds a family with the covering property above: a seeded random candidate
/// phase sized by the per-pair hit probability, then exhaustive verification
/// with greedy completion (adding A itself for any missed pair), so the
/// property holds unconditionally. Deterministic for fixed (n,p,q).
inline LopsidedUniversalFamily lopsided_universal_family(int n, int p, int q,
                                                         std::int64_t max_members = 1'000'000) {
  if (n < 0 || p < 0 || q < 0) throw std::invalid_argument("negative universal family parameter");
  if (n > 31) throw ResourceLimitError("universal family construction capped at n <= 31");
  LopsidedUniversalFamily fam{n, p, q, {}};
  if (p == 0) {
    fam.sets.push_back(0);  // the empty set avoids every B
    return fam;
  }

  auto pairs = detail::lopsided_test_pairs(n, p, q);
  std::set<std::uint32_t> members;
  if (p + q <= n && n > 0) {
    // Candidate count: ln(#pairs) / Pr[fixed pair covered by one draw].
    double hit = std::pow(double(p) / (p + q), p) * std::pow(double(q) / (p + q), q);
    double want = std::log(std::max<double>(2.0, static_cast<double>(pairs.size()))) / hit;
    std::int64_t draws = static_cast<std::int64_t>(std::ceil(want));
    if (draws > max_members) throw ResourceLimitError("universal family candidate budget exceeded");
    std::mt19937_64 rng = seeded_stream(0x105151dedull, 0);
    for (std::int64_t i = 0; i < draws; ++i) {
      std::uint32_t m = 0;
      for (int v = 0; v < n; ++v)
        if (static_cast<int>(rng() % static_cast<std::uint64_t>(p + q)) < p) m |= 1u << v;
      members.insert(m);
    }
  }
  fam.sets.assign(members.begin(), members.end());
  for (auto [a, b] : pairs) {
    if (!fam.covers(a, b)) fam.sets.push_back(a);
    if (static_cast<std::int64_t>(fam.sets.size()) > max_members)
      throw ResourceLimitError("universal family exceeded member cap");
  }
  return fam;
}

/// Exhaustive check of the <=-size covering property.
inline bool verify_lopsided(const LopsidedUniversalFamily& fam) {
  for (auto [a, b] : detail::lopsided_test_pairs(fam.universe, fam.p, fam.q))
    if (!fam.covers(a, b)) return false;
  return true;
}

/// Family of functions [0,n) -> [0, range) such that every subset of size at
/// most `ell` is mapped injectively by some member; range = ell^2.
struct PerfectHashFamily {
  int universe = 0;
  int ell = 0;
  int range = 0;
  std::vector<std::vector<int>> functions;  // functions[i][v] in [0, range)

  bool injective_on(int fn, const std::vector<int>& s) const {
    std::vector<int> vals;
    vals.reserve(s.size());
    for (int v : s) vals.push_back(functions[fn][v]);
    std::sort(vals.begin(), vals.end());
    return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
  }

  bool some_injective_on(const std::vector<int>& s) const {
    for (size_t i = 0; i < functions.size(); ++i)
      if (injective_on(static_cast<int>(i), s)) return true;
    return false;
  }
};

/// Random functions sized to cover all subsets with high probability, then
/// exhaustive verification over the size-min(ell,n) subsets (injectivity is
/// inherited by subsets) with an explicit injective completion per miss.
inline PerfectHashFamily perfect_hash_family(int n, int ell, std::int64_t max_members = 1'000'000) {
  if (ell < 1) throw std::invalid_argument("perfect hash family needs ell >= 1");
  if (n < 0) throw std::invalid_argument("negative universe");
  if (n > 31) throw ResourceLimitError("perfect hash construction capped at n <= 31");
  PerfectHashFamily fam{n, ell, ell * ell, {}};
  if (n == 0) return fam;
  int probe = std::min(ell, n);
  // Collision probability of one random function on a fixed probe set is at
  // most C(probe,2)/ell^2 <= 1/2, so log2(#subsets)+8 draws miss a fixed set
  // with probability well under 1/#subsets.
  std::int64_t subsets = binomial(n, probe);
  int draws = static_cast<int>(std::ceil(std::log2(static_cast<double>(std::max<std::int64_t>(2, subsets))))) + 8;
  if (draws > max_members) throw ResourceLimitError("perfect hash candidate budget exceeded");
  std::mt19937_64 rng = seeded_stream(0x9e3779b97f4a7c15ull, 1);
  for (int i = 0; i < draws; ++i) {
    std::vector<int> f(n);
    for (int v = 0; v < n; ++v) f[v] = static_cast<int>(rng() % static_cast<std::uint64_t>(fam.range));
    fam.functions.push_back(std::move(f));
  }
  for_each_combination(n, probe, [&](const std::vector<int>& s) {
    if (fam.some_injective_on(s)) return;
    std::vector<int> f(n, 0);
    for (size_t i = 0; i < s.size(); ++i) f[s[i]] = static_cast<int>(i % fam.range);
    fam.functions.push_back(std::move(f));
  });
  if (static_cast<std::int64_t>(fam.functions.size()) > max_members)
    throw ResourceLimitError("perfect hash family exceeded member cap");
  return fam;
}

inline bool verify_perfect_hash(const PerfectHashFamily& fam) {
  int probe = std::min(fam.ell, fam.universe);
  bool ok = true;
  for_each_combination(fam.universe, probe, [&](const std::vector<int>& s) {
    if (!fam.some_injective_on(s)) ok = false;
  });
  return ok;
}

}  // namespace stablecut
