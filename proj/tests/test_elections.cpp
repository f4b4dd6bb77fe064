#include <gtest/gtest.h>

#include "hardctl/condorcet.hpp"
#include "hardctl/dodgson.hpp"
#include "hardctl/error.hpp"
#include "hardctl/generate.hpp"
#include "hardctl/kemeny.hpp"
#include "oracles.hpp"

using namespace hardctl;

namespace {

Election tiny(std::uint64_t seed, int m, int voters) {
  Rng rng(seed);
  return random_election(m, voters, rng);
}

}  // namespace

TEST(ElectionFormat, RoundTrip) {
  const char* text =
      "# three voters\n"
      "candidates: 3\n"
      "name: 1 alice\n"
      "2: 1,2,3\n"
      "1: 3,2,1\n"
      "1: partial 2,3\n";
  Election e = parse_election(text);
  EXPECT_EQ(e.num_candidates(), 3);
  EXPECT_EQ(e.total_voters(), 4);
  EXPECT_TRUE(e.has_partial_votes());
  EXPECT_EQ(e.name(0), "alice");
  EXPECT_EQ(e.votes()[2].ranking, (Ranking{1, 2}));
  EXPECT_EQ(parse_election(format_election(e)), e);
}

TEST(ElectionFormat, RejectsBadRankingsWithLine) {
  try {
    parse_election("candidates: 3\n1: 1,2,3\n1: 1,1,2\n");
    FAIL() << "duplicate candidate accepted";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 3);
  }
  EXPECT_THROW(parse_election("candidates: 3\n1: 1,2\n"), InvalidInput);
  EXPECT_THROW(parse_election("candidates: 2\n0: 1,2\n"), InvalidInput);
  EXPECT_THROW(Election(2, {{1, {0, 2}}}), InvalidInput);
}

TEST(ElectionFormat, EmptyVoteListAllowed) {
  Election e(3, {});
  EXPECT_EQ(e.total_voters(), 0);
  EXPECT_EQ(condorcet_status(e, 1), CondorcetStatus::weak_condorcet);
}

TEST(Election, RestrictKeepsRelativeOrder) {
  Election e(4, {{2, {3, 1, 0, 2}}}, {"a", "b", "c", "d"});
  std::vector<Candidate> kept{1, 3};
  Election r = restrict_election(e, kept);
  EXPECT_EQ(r.num_candidates(), 2);
  EXPECT_EQ(r.votes()[0].ranking, (Ranking{1, 0}));
  EXPECT_EQ(r.votes()[0].count, 2);
  EXPECT_EQ(r.name(0), "b");
}

TEST(Election, PairwiseMatrixCountsVotes) {
  Election e(3, {{2, {0, 1, 2}}, {1, {2, 1, 0}}});
  PairwiseMatrix pm(e);
  EXPECT_EQ(pm.prefers(0, 1), 2);
  EXPECT_EQ(pm.prefers(1, 0), 1);
  EXPECT_EQ(pm.margin(0, 2), 1);
}

TEST(Kemeny, KendallTau) {
  Ranking a{0, 1, 2, 3}, b{3, 2, 1, 0}, c{1, 0, 2, 3};
  EXPECT_EQ(kendall_tau(a, a), 0);
  EXPECT_EQ(kendall_tau(a, b), 6);
  EXPECT_EQ(kendall_tau(a, c), 1);
}

TEST(Kemeny, MatchesPermutationOracle) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    Election e = tiny(seed, 2 + static_cast<int>(seed % 5), 1 + static_cast<int>(seed % 6));
    auto truth = oracle::kemeny(e);
    auto got = kemeny_winners(e, KemenyVariant::kemeny);
    ASSERT_EQ(got.score, truth.score) << format_election(e);
    ASSERT_EQ(got.winners, truth.winners) << format_election(e);
    EXPECT_EQ(kemeny_score(e, got.consensus), truth.score);
    for (Candidate c = 0; c < e.num_candidates(); ++c) {
      bool expect = std::find(truth.winners.begin(), truth.winners.end(), c) != truth.winners.end();
      EXPECT_EQ(is_kemeny_winner(e, c, KemenyVariant::kemeny), expect);
    }
  }
}

TEST(Kemeny, PrimeMatchesOracleOnPartialVotes) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    const int m = 2 + draw(rng, 4);
    std::vector<Vote> votes;
    for (int i = 0; i < 1 + draw(rng, 5); ++i) {
      Ranking r = random_ranking(m, rng);
      r.resize(1 + draw(rng, m));
      votes.push_back({1 + draw(rng, 2), r, static_cast<int>(r.size()) < m});
    }
    Election e(m, votes);
    auto truth = oracle::kemeny_prime(e);
    auto got = kemeny_winners(e, KemenyVariant::kemeny_prime);
    ASSERT_EQ(got.score, truth.score) << format_election(e);
    ASSERT_EQ(got.winners, truth.winners) << format_election(e);
    EXPECT_EQ(kemeny_prime_score(e, got.consensus), truth.score);
  }
}

TEST(Kemeny, ConsensusIsLexMinOptimum) {
  Election e(3, {{1, {0, 1, 2}}, {1, {1, 2, 0}}, {1, {2, 0, 1}}});
  auto got = kemeny_winners(e, KemenyVariant::kemeny);
  EXPECT_EQ(got.winners, (std::vector<Candidate>{0, 1, 2}));
  EXPECT_EQ(got.consensus, (std::vector<Candidate>{0, 1, 2}));
  EXPECT_EQ(got.score, 4);
}

TEST(Kemeny, CandidateCapRaisesResourceLimit) {
  KemenyLimits lim;
  lim.max_candidates = 3;
  EXPECT_THROW(kemeny_winners(tiny(3, 4, 2), KemenyVariant::kemeny, lim), ResourceLimit);
}

TEST(Condorcet, Status) {
  Election e(3, {{2, {0, 1, 2}}, {1, {1, 0, 2}}});
  EXPECT_EQ(condorcet_status(e, 0), CondorcetStatus::condorcet);
  EXPECT_EQ(condorcet_status(e, 2), CondorcetStatus::neither);
  Election tie(2, {{1, {0, 1}}, {1, {1, 0}}});
  EXPECT_EQ(condorcet_status(tie, 0), CondorcetStatus::weak_condorcet);
}

TEST(Young, MatchesSubsetOracle) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    Rng rng(seed);
    const int m = 2 + draw(rng, 3);
    std::vector<Vote> votes;
    for (int i = 0; i < 1 + draw(rng, 4); ++i) votes.push_back({1 + draw(rng, 3), random_ranking(m, rng)});
    Election e(m, votes);
    for (Candidate c = 0; c < m; ++c) {
      auto got = young_score(e, c);
      ASSERT_EQ(got.score, oracle::young(e, c)) << format_election(e) << "candidate " << c;
      // the reported subset really is one
      std::vector<std::vector<Candidate>> kept;
      int total = 0;
      for (std::size_t i = 0; i < votes.size(); ++i) {
        ASSERT_LE(got.kept[i], votes[i].count);
        for (int j = 0; j < got.kept[i]; ++j) kept.push_back(votes[i].ranking);
        total += got.kept[i];
      }
      EXPECT_EQ(total, got.score);
      EXPECT_TRUE(oracle::weak_condorcet(kept, m, c));
    }
  }
}

TEST(Young, WinnersHaveMaxScore) {
  Election e = tiny(8, 4, 5);
  auto ws = young_winners(e);
  auto best = *std::max_element(ws.scores.begin(), ws.scores.end());
  for (Candidate c : ws.winners) EXPECT_EQ(ws.scores[c], best);
}

TEST(Young, SubsetCapRaisesResourceLimit) {
  YoungLimits lim;
  lim.max_subsets = 4;
  EXPECT_THROW(young_score(tiny(5, 3, 6), 0, lim), ResourceLimit);
}

TEST(Dodgson, MatchesSwapBfsOracle) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Rng rng(seed);
    const int m = 2 + draw(rng, 3);
    Election e = random_election(m, 1 + draw(rng, 3), rng);
    for (Candidate c = 0; c < m; ++c) {
      auto got = dodgson_score(e, c);
      ASSERT_EQ(got.score, oracle::dodgson(e, c)) << format_election(e) << "candidate " << c;
      Election lifted = apply_lifts(e, c, got.lifts);
      EXPECT_EQ(condorcet_status(lifted, c), CondorcetStatus::condorcet);
    }
  }
}

TEST(Dodgson, WithinBudget) {
  Election e(3, {{1, {1, 0, 2}}, {1, {2, 0, 1}}, {1, {1, 2, 0}}});
  int s = dodgson_score(e, 0).score;
  EXPECT_FALSE(dodgson_within(e, 0, s - 1).has_value());
  auto w = dodgson_within(e, 0, s);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->score, s);
}

TEST(Dodgson, DeficitsAndWinners) {
  Election e(3, {{2, {0, 1, 2}}, {1, {1, 2, 0}}});
  EXPECT_EQ(dodgson_deficits(e, 0), (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(dodgson_winners(e).winners, (std::vector<Candidate>{0}));
  EXPECT_TRUE(is_dodgson_winner(e, 0));
  EXPECT_FALSE(is_dodgson_winner(e, 2));
}
