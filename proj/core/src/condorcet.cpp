#include "hardctl/condorcet.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "hardctl/error.hpp"

namespace hardctl {

CondorcetStatus condorcet_status(const Election& e, Candidate c) {
  if (c < 0 || c >= e.num_candidates()) throw InvalidInput("candidate out of range");
  PairwiseMatrix pm(e);
  bool strict = true;
  for (Candidate d = 0; d < e.num_candidates(); ++d) {
    if (d == c) continue;
    if (pm.prefers(c, d) < pm.prefers(d, c)) return CondorcetStatus::neither;
    if (pm.prefers(c, d) == pm.prefers(d, c)) strict = false;
  }
  return strict ? CondorcetStatus::condorcet : CondorcetStatus::weak_condorcet;
}

namespace {

struct YoungSearch {
  int m = 0;
  int groups = 0;
  std::vector<int> count;               // per distinct vote
  std::vector<std::vector<int>> delta;  // per vote, per rival: +1 if c above, -1 otherwise
  std::vector<std::vector<std::int64_t>> gain_after;  // [i][d]: max positive gain from votes >= i
  std::vector<int> suffix_count;
  std::vector<std::int64_t> margin;
  std::vector<int> take, best_take;
  int current = 0, best = -1;

  bool feasible_now() const {
    return std::all_of(margin.begin(), margin.end(), [](std::int64_t x) { return x >= 0; });
  }

  void dfs(int i) {
    if (current + suffix_count[i] <= best) return;
    for (int d = 0; d < m; ++d) {
      if (margin[d] + gain_after[i][d] < 0) return;
    }
    if (i == groups) {
      if (feasible_now() && current > best) {
        best = current;
        best_take = take;
      }
      return;
    }
    for (int x = count[i]; x >= 0; --x) {
      take[i] = x;
      current += x;
      for (int d = 0; d < m; ++d) margin[d] += static_cast<std::int64_t>(x) * delta[i][d];
      dfs(i + 1);
      for (int d = 0; d < m; ++d) margin[d] -= static_cast<std::int64_t>(x) * delta[i][d];
      current -= x;
    }
    take[i] = 0;
  }
};

}  // namespace

YoungScore young_score(const Election& e, Candidate c, const YoungLimits& limits) {
  const int m = e.num_candidates();
  if (c < 0 || c >= m) throw InvalidInput("candidate out of range");
  if (e.has_partial_votes()) throw InvalidInput("Young scores need complete votes");
  // identical rankings form one group; the search picks a count per group
  std::vector<int> group_of;
  std::vector<Vote> groups;
  std::map<Ranking, int> index;
  for (const Vote& v : e.votes()) {
    auto [it, fresh] = index.emplace(v.ranking, static_cast<int>(groups.size()));
    group_of.push_back(it->second);
    if (fresh) {
      groups.push_back(v);
    } else {
      groups[it->second].count += v.count;
    }
  }
  std::uint64_t space = 1;
  for (const Vote& v : groups) {
    space *= static_cast<std::uint64_t>(v.count) + 1;
    if (space > limits.max_subsets) {
      throw ResourceLimit("Young score search space exceeds " + std::to_string(limits.max_subsets) +
                          " voter subsets");
    }
  }
  YoungSearch s;
  s.m = m;
  s.groups = static_cast<int>(groups.size());
  for (const Vote& v : groups) {
    s.count.push_back(v.count);
    std::vector<int> d(m, 0);
    bool above = true;
    for (Candidate x : v.ranking) {
      if (x == c) {
        above = false;
        continue;
      }
      d[x] = above ? -1 : +1;
    }
    s.delta.push_back(std::move(d));
  }
  s.gain_after.assign(s.groups + 1, std::vector<std::int64_t>(m, 0));
  s.suffix_count.assign(s.groups + 1, 0);
  for (int i = s.groups - 1; i >= 0; --i) {
    s.suffix_count[i] = s.suffix_count[i + 1] + s.count[i];
    for (int d = 0; d < m; ++d) {
      s.gain_after[i][d] = s.gain_after[i + 1][d] + (s.delta[i][d] > 0 ? s.count[i] : 0);
    }
  }
  s.margin.assign(m, 0);
  s.take.assign(s.groups, 0);
  s.best_take.assign(s.groups, 0);
  s.dfs(0);
  // hand each group's kept voters back to its entries in order
  std::vector<int> kept(e.votes().size(), 0);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    int& left = s.best_take[group_of[i]];
    kept[i] = std::min(left, e.votes()[i].count);
    left -= kept[i];
  }
  return {s.best, std::move(kept)};
}

WinnerSet young_winners(const Election& e, const YoungLimits& limits) {
  WinnerSet w;
  std::int64_t best = -1;
  for (Candidate c = 0; c < e.num_candidates(); ++c) {
    std::int64_t sc = young_score(e, c, limits).score;
    w.scores.push_back(sc);
    best = std::max(best, sc);
  }
  for (Candidate c = 0; c < e.num_candidates(); ++c) {
    if (w.scores[c] == best) w.winners.push_back(c);
  }
  return w;
}

}  // namespace hardctl
