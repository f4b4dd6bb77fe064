#include <gtest/gtest.h>

#include "hardctl/control.hpp"
#include "hardctl/error.hpp"
#include "hardctl/generate.hpp"
#include "oracles.hpp"

using namespace hardctl;

namespace {

// Projects votes onto `kept` (ascending old ids) without library helpers.
Election project(int m, const std::vector<std::vector<Candidate>>& votes, const std::vector<Candidate>& kept) {
  std::vector<int> id(m, -1);
  for (std::size_t i = 0; i < kept.size(); ++i) id[kept[i]] = static_cast<int>(i);
  std::vector<Vote> out;
  for (const auto& r : votes) {
    Ranking nr;
    for (Candidate c : r) {
      if (id[c] >= 0) nr.push_back(id[c]);
    }
    out.push_back({1, nr});
  }
  return Election(static_cast<int>(kept.size()), out);
}

bool oracle_winner(const Election& e, Candidate c, Rule rule) {
  const int m = e.num_candidates();
  switch (rule) {
    case Rule::kemeny:
    case Rule::kemeny_prime: {
      auto t = oracle::kemeny(e);
      return std::find(t.winners.begin(), t.winners.end(), c) != t.winners.end();
    }
    case Rule::young: {
      int mine = oracle::young(e, c);
      for (Candidate d = 0; d < m; ++d) {
        if (oracle::young(e, d) > mine) return false;
      }
      return true;
    }
    case Rule::dodgson: {
      int mine = oracle::dodgson(e, c);
      for (Candidate d = 0; d < m; ++d) {
        if (oracle::dodgson(e, d) < mine) return false;
      }
      return true;
    }
  }
  return false;
}

bool naive_control(const ControlInstance& inst) {
  const int m = inst.election.num_candidates();
  auto voters = oracle::expanded(inst.election);
  std::vector<std::vector<Candidate>> extra;
  for (const auto& v : inst.addable_voters) {
    for (int i = 0; i < v.count; ++i) extra.push_back(v.ranking);
  }
  std::vector<Candidate> items;
  switch (inst.kind) {
    case ControlKind::ccac: items = inst.unregistered; break;
    case ControlKind::ccdc:
      for (Candidate c = 0; c < m; ++c) {
        if (c != inst.preferred) items.push_back(c);
      }
      break;
    case ControlKind::ccdc_star: items = inst.deletable; break;
    case ControlKind::ccdv:
      for (std::size_t i = 0; i < voters.size(); ++i) items.push_back(static_cast<int>(i));
      break;
    case ControlKind::ccav:
      for (std::size_t i = 0; i < extra.size(); ++i) items.push_back(static_cast<int>(i));
      break;
  }
  const int n = static_cast<int>(items.size());
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if (std::popcount(s) > inst.limit) continue;
    auto chosen = [&](int i) { return (s >> i & 1U) != 0; };
    std::vector<Candidate> kept;
    auto vs = voters;
    if (inst.kind == ControlKind::ccac) {
      for (Candidate c = 0; c < m; ++c) {
        auto it = std::find(items.begin(), items.end(), c);
        if (it == items.end() || chosen(static_cast<int>(it - items.begin()))) kept.push_back(c);
      }
    } else if (inst.kind == ControlKind::ccdc || inst.kind == ControlKind::ccdc_star) {
      for (Candidate c = 0; c < m; ++c) {
        auto it = std::find(items.begin(), items.end(), c);
        if (it == items.end() || !chosen(static_cast<int>(it - items.begin()))) kept.push_back(c);
      }
    } else {
      for (Candidate c = 0; c < m; ++c) kept.push_back(c);
      vs.clear();
      if (inst.kind == ControlKind::ccdv) {
        for (int i = 0; i < n; ++i) {
          if (!chosen(i)) vs.push_back(voters[i]);
        }
      } else {
        vs = voters;
        for (int i = 0; i < n; ++i) {
          if (chosen(i)) vs.push_back(extra[i]);
        }
      }
    }
    Election e = project(m, vs, kept);
    Candidate p = static_cast<Candidate>(std::find(kept.begin(), kept.end(), inst.preferred) - kept.begin());
    if (oracle_winner(e, p, inst.rule)) return true;
  }
  return false;
}

ControlInstance random_instance(Rule rule, ControlKind kind, Rng& rng) {
  const bool small = rule == Rule::dodgson || rule == Rule::young;
  const int m = 3 + draw(rng, small ? 1 : 3);
  ControlInstance inst;
  inst.rule = rule;
  inst.kind = kind;
  inst.election = random_election(m, 1 + draw(rng, small ? 3 : 4), rng);
  inst.preferred = draw(rng, m);
  inst.limit = draw(rng, 3);
  for (Candidate c = 0; c < m; ++c) {
    if (c == inst.preferred || draw(rng, 2)) continue;
    if (kind == ControlKind::ccac) inst.unregistered.push_back(c);
    if (kind == ControlKind::ccdc_star) inst.deletable.push_back(c);
  }
  if (kind == ControlKind::ccav) {
    for (int i = 0; i < 1 + draw(rng, 3); ++i) inst.addable_voters.push_back({1, random_ranking(m, rng)});
  }
  return inst;
}

}  // namespace

TEST(Control, NamesRoundTrip) {
  for (auto r : {Rule::kemeny, Rule::kemeny_prime, Rule::young, Rule::dodgson}) EXPECT_EQ(rule_from_string(to_string(r)), r);
  for (auto k : {ControlKind::ccac, ControlKind::ccav, ControlKind::ccdv, ControlKind::ccdc, ControlKind::ccdc_star}) {
    EXPECT_EQ(control_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(rule_from_string("borda"), InvalidInput);
}

TEST(Control, FormatRoundTrip) {
  Rng rng(6);
  for (auto kind : {ControlKind::ccac, ControlKind::ccav, ControlKind::ccdv, ControlKind::ccdc, ControlKind::ccdc_star}) {
    auto inst = random_instance(Rule::kemeny, kind, rng);
    EXPECT_EQ(parse_control(format_control(inst)), inst) << to_string(kind);
  }
}

TEST(Control, ValidationRejectsBadInstances) {
  const char* base = "rule: kemeny\nkind: ccac\nlimit: 1\npreferred: 1\ncandidates: 3\n1: 1,2,3\n";
  EXPECT_NO_THROW(parse_control(base));
  EXPECT_THROW(parse_control(std::string(base) + "unregistered: 1\n"), InvalidInput);
  EXPECT_THROW(parse_control("rule: kemeny\nkind: ccac\ncandidates: 2\n1: 1,2\n"), ParseError);
  EXPECT_THROW(parse_control("rule: young\nkind: ccdv\nlimit: -1\npreferred: 1\ncandidates: 2\n1: 1,2\n"),
               InvalidInput);
}

TEST(Control, MatchesNaiveOracle) {
  Rng rng(2024);
  for (auto rule : {Rule::kemeny, Rule::young, Rule::dodgson}) {
    for (auto kind : {ControlKind::ccac, ControlKind::ccav, ControlKind::ccdv, ControlKind::ccdc,
                      ControlKind::ccdc_star}) {
      for (int t = 0; t < (rule == Rule::dodgson ? 6 : 15); ++t) {
        auto inst = random_instance(rule, kind, rng);
        auto got = solve_control(inst);
        ASSERT_EQ(got.decision, naive_control(inst)) << format_control(inst);
        if (got.decision) {
          EXPECT_LE(static_cast<int>(got.witness.size()), inst.limit);
          auto ce = apply_action(inst, got.witness);
          EXPECT_TRUE(is_winner(ce.election, ce.preferred, rule));
        }
      }
    }
  }
}

TEST(Control, WitnessIsSmallestFirst) {
  // p = 1 loses to 0; deleting 0 alone suffices
  ControlInstance inst;
  inst.rule = Rule::kemeny;
  inst.kind = ControlKind::ccdc;
  inst.election = Election(3, {{2, {0, 1, 2}}});
  inst.preferred = 1;
  inst.limit = 2;
  auto got = solve_control(inst);
  ASSERT_TRUE(got.decision);
  EXPECT_EQ(action_items(inst), (std::vector<int>{0, 2}));
  EXPECT_EQ(got.witness, (std::vector<int>{0}));
}

TEST(Control, SubsetBudgetRaisesResourceLimit) {
  Rng rng(1);
  ControlInstance inst;
  inst.rule = Rule::kemeny;
  inst.kind = ControlKind::ccdv;
  inst.election = random_election(3, 30, rng);
  inst.limit = 15;
  ControlLimits lim;
  lim.max_subsets = 100;
  EXPECT_THROW(solve_control(inst, lim), ResourceLimit);
}

TEST(Control, WinnersAgreeAcrossRules) {
  Election e(3, {{3, {0, 1, 2}}, {2, {1, 2, 0}}});
  for (auto r : {Rule::kemeny, Rule::young, Rule::dodgson}) {
    EXPECT_EQ(winners(e, r), (std::vector<Candidate>{0})) << to_string(r);
  }
}
