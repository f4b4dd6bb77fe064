#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hardctl/condorcet.hpp"
#include "hardctl/election.hpp"

namespace hardctl {

struct DodgsonLimits {
  /// Search nodes per score computation before giving up.
  std::uint64_t max_nodes = std::uint64_t{1} << 30;
};

/// lifts[i][j]: positions candidate c moves up in copy j of e.votes()[i].
using LiftVector = std::vector<std::vector<int>>;

struct DodgsonScore {
  int score = 0;
  LiftVector lifts;
};

/// Votes c still needs over each rival to beat it strictly (0 for c itself).
std::vector<int> dodgson_deficits(const Election& e, Candidate c);

/// Applies a lift vector; returns the modified election.
Election apply_lifts(const Election& e, Candidate c, const LiftVector& lifts);

/// Minimum number of adjacent swaps making c a Condorcet winner.
///
/// Only upward moves of c are searched: c's pairwise tallies depend only on
/// its own position in each vote, so swaps not involving c never help.
/// Iterative deepening on the swap budget, starting at the deficit sum.
DodgsonScore dodgson_score(const Election& e, Candidate c, const DodgsonLimits& limits = {});

/// A witness of cost <= budget, or nothing when the score exceeds budget.
std::optional<DodgsonScore> dodgson_within(const Election& e, Candidate c, int budget,
                                           const DodgsonLimits& limits = {});

/// Candidates of minimum Dodgson score.
WinnerSet dodgson_winners(const Election& e, const DodgsonLimits& limits = {});

/// Winner test for a single candidate.
bool is_dodgson_winner(const Election& e, Candidate c, const DodgsonLimits& limits = {});

}  // namespace hardctl
