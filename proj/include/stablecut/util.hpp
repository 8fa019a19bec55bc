#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace stablecut {

/// Sorted vector of distinct 0-based vertex ids; the set representation used
/// throughout the library.
using VertexSet = std::vector<int>;

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Thrown when a construction would exceed a configured size or enumeration cap.
class ResourceLimitError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void sort_unique(VertexSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool set_contains(const VertexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

constexpr std::int64_t kSaturated = std::numeric_limits<std::int64_t>::max() / 4;

/// a*b clamped to kSaturated; inputs must be non-negative.
inline std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

inline std::int64_t sat_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

/// Binomial coefficient, clamped to kSaturated.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    if (r > kSaturated / n) return kSaturated;
    r = r * (n - k + i) / i;
  }
  return std::min(r, kSaturated);
}

/// Independent reproducible stream for draw number `index` under `seed`.
inline std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Bernoulli(1/denom) from raw engine output; avoids the implementation-defined
/// std::bernoulli_distribution so draws are bit-reproducible across toolchains.
inline bool one_in(std::mt19937_64& rng, int denom) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(denom)) == 0;
}

/// Calls f(combination) for every size-k subset of [0,n); combination is sorted.
template <typename F>
void for_each_combination(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    f(const_cast<const std::vector<int>&>(c));
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

inline std::vector<int> bits_to_set(std::uint32_t mask) {
  std::vector<int> out;
  for (int v = 0; mask; ++v, mask >>= 1)
    if (mask & 1u) out.push_back(v);
  return out;
}

inline std::uint32_t set_to_bits(const VertexSet& s) {
  std::uint32_t m = 0;
  for (int v : s) m |= 1u << v;
  return m;
}

}  // namespace stablecut
