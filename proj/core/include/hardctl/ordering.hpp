#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace hardctl {

/// Limits for exact linear-ordering searches.
struct OrderingLimits {
  /// Components up to this size are solved by full subset dynamic programming.
  int dp_max_component = 20;
  /// Larger components use cycle hitting-set branch and bound; this caps the
  /// branch nodes summed over all rounds of one component.
  std::uint64_t max_search_nodes = std::uint64_t{1} << 26;
};

/// Minimum-weight linear ordering over at most 64 items.
///
/// An arc (u, v) with weight w costs w whenever v is placed above u.
/// Unit-weight arcs give the minimum feedback arc set; pairwise majority
/// margins give the Kemeny score minus its unavoidable part.
///
/// Optima are computed per strongly connected component of the positive
/// arcs: components can always be laid out in topological order, so the
/// global optimum is the sum of component optima. Component optima are
/// cached, so one object must not be shared between threads.
class LinearOrdering {
 public:
  static constexpr int kMaxItems = 64;

  explicit LinearOrdering(int n, OrderingLimits limits = {});

  int size() const noexcept { return n_; }
  std::uint64_t all() const noexcept;

  /// Adds w to the weight of arc (from, to). Self-arcs are rejected.
  void add_arc(int from, int to, std::int64_t w);
  std::int64_t weight(int from, int to) const { return w_[idx(from, to)]; }

  /// Penalty of a concrete order of the items in `order` (top first).
  std::int64_t cost(std::span<const int> order) const;

  /// Minimum penalty over all orders of the items in `mask`.
  std::int64_t optimum(std::uint64_t mask) const;
  std::int64_t optimum() const { return optimum(all()); }

  /// Minimum penalty over orders of `mask` that put `v` on top.
  std::int64_t optimum_with_first(int v, std::uint64_t mask) const;

  /// True iff some optimal order of `mask` puts `v` on top.
  bool can_be_first(int v, std::uint64_t mask) const;

  /// Items of `mask` that top some optimal order, ascending.
  std::vector<int> optimal_firsts(std::uint64_t mask) const;

  /// Lexicographically smallest optimal order of the items in `mask`.
  std::vector<int> lex_min_optimal_order(std::uint64_t mask) const;

  /// Strongly connected components of the positive arcs inside `mask`,
  /// as bitmasks in topological order (sources first).
  std::vector<std::uint64_t> components(std::uint64_t mask) const;

  /// Sum of arc weights from items of `from` into items of `to`.
  std::int64_t weight_between(std::uint64_t from, std::uint64_t to) const;

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }
  std::int64_t solve_component(std::uint64_t comp) const;
  std::int64_t solve_dp(const std::vector<int>& items) const;
  std::int64_t solve_hitting_set(const std::vector<int>& items) const;

  int n_;
  OrderingLimits limits_;
  std::vector<std::int64_t> w_;
  std::vector<std::uint64_t> out_;  // positive out-arcs
  std::vector<std::uint64_t> in_;   // positive in-arcs
  mutable std::unordered_map<std::uint64_t, std::int64_t> cache_;
};

}  // namespace hardctl
