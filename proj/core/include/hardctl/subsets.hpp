#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hardctl/error.hpp"

namespace hardctl {

/// Number of subsets of an n-set with at most k elements, saturating at
/// `cap + 1` so callers can compare against a limit without overflow.
inline std::uint64_t count_small_subsets(int n, int k, std::uint64_t cap) {
  std::uint64_t total = 0, binom = 1;
  for (int s = 0; s <= k && s <= n; ++s) {
    if (s > 0) {
      // binom = C(n, s), computed incrementally; exact because C(n,s-1)*(n-s+1) is divisible by s
      long double next = static_cast<long double>(binom) * (n - s + 1) / s;
      if (next > static_cast<long double>(cap)) return cap + 1;
      binom = binom * static_cast<std::uint64_t>(n - s + 1) / static_cast<std::uint64_t>(s);
    }
    total += binom;
    if (total > cap) return cap + 1;
  }
  return total;
}

/// Throws ResourceLimit when more than `cap` subsets would be enumerated.
inline void check_subset_budget(int n, int k, std::uint64_t cap, const std::string& what) {
  if (count_small_subsets(n, k, cap) > cap) {
    throw ResourceLimit(what + ": more than " + std::to_string(cap) + " action subsets to enumerate");
  }
}

/// Calls f(indices) for every subset of {0..n-1} with at most k elements,
/// by increasing size and then lexicographically. Stops when f returns true
/// and returns the number of subsets visited.
template <class F>
std::uint64_t for_each_small_subset(int n, int k, F&& f) {
  std::uint64_t visited = 0;
  std::vector<int> idx;
  for (int s = 0; s <= k && s <= n; ++s) {
    idx.resize(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ++visited;
      if (f(static_cast<const std::vector<int>&>(idx))) return visited;
      int i = s - 1;
      while (i >= 0 && idx[i] == n - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return visited;
}

}  // namespace hardctl
