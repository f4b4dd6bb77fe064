#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hardctl/election.hpp"
#include "hardctl/ordering.hpp"

namespace hardctl {

enum class KemenyVariant { kemeny, kemeny_prime };

/// Number of candidate pairs ordered oppositely by two complete rankings.
int kendall_tau(std::span<const Candidate> r1, std::span<const Candidate> r2);

/// Sum over pairs (a above b in consensus) of voters preferring b to a.
/// Requires a complete-vote election.
std::int64_t kemeny_score(const Election& e, std::span<const Candidate> consensus);

/// As kemeny_score, but a pair contributes only through votes listing both.
std::int64_t kemeny_prime_score(const Election& e, std::span<const Candidate> consensus);

struct KemenyResult {
  std::int64_t score = 0;
  std::vector<Candidate> winners;    // ascending
  std::vector<Candidate> consensus;  // lexicographically smallest optimum
};

struct KemenyLimits {
  int max_candidates = 64;
  OrderingLimits ordering{};
};

/// Builds the ordering problem behind a Kemeny(') election: arc a->b weighted
/// by the pairwise margin of a over b. Returns the unavoidable base cost.
std::int64_t kemeny_ordering(const PairwiseMatrix& pm, LinearOrdering& out);

/// Optimal score, co-winner set and one optimal consensus.
KemenyResult kemeny_winners(const Election& e, KemenyVariant variant, const KemenyLimits& limits = {},
                            bool with_consensus = true);

/// Winner test for a single candidate (cheaper than the full winner set).
bool is_kemeny_winner(const Election& e, Candidate c, KemenyVariant variant, const KemenyLimits& limits = {});

}  // namespace hardctl
