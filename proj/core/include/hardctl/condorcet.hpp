#pragma once

#include <cstdint>
#include <vector>

#include "hardctl/election.hpp"

namespace hardctl {

enum class CondorcetStatus { condorcet, weak_condorcet, neither };

/// Pairwise status of c. With no voters every candidate is weak Condorcet.
CondorcetStatus condorcet_status(const Election& e, Candidate c);

struct YoungLimits {
  /// Cap on the number of voter sub-multisets (product of count+1 over
  /// distinct votes) the search may have to range over.
  std::uint64_t max_subsets = std::uint64_t{1} << 22;
};

struct YoungScore {
  int score = 0;
  /// How many voters of each entry of e.votes() the optimal subset keeps.
  std::vector<int> kept;
};

/// Size of a largest voter sub-multiset in which c is a weak Condorcet
/// winner. The empty subset always qualifies, so the score is >= 0.
YoungScore young_score(const Election& e, Candidate c, const YoungLimits& limits = {});

struct WinnerSet {
  std::vector<Candidate> winners;    // ascending
  std::vector<std::int64_t> scores;  // per candidate
};

/// Candidates of maximum Young score.
WinnerSet young_winners(const Election& e, const YoungLimits& limits = {});

}  // namespace hardctl
