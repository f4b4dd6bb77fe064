#include "hardctl/dodgson.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hardctl/error.hpp"

namespace hardctl {

std::vector<int> dodgson_deficits(const Election& e, Candidate c) {
  PairwiseMatrix pm(e);
  std::vector<int> need(e.num_candidates(), 0);
  for (Candidate d = 0; d < e.num_candidates(); ++d) {
    if (d == c) continue;
    std::int64_t diff = pm.prefers(d, c) - pm.prefers(c, d);
    // each gained vote moves the margin by two
    if (diff >= 0) need[d] = static_cast<int>(diff / 2 + 1);
  }
  return need;
}

Election apply_lifts(const Election& e, Candidate c, const LiftVector& lifts) {
  if (lifts.size() != e.votes().size()) throw InvalidInput("lift vector does not match vote list");
  std::vector<Vote> votes;
  for (std::size_t i = 0; i < e.votes().size(); ++i) {
    const Vote& v = e.votes()[i];
    if (static_cast<int>(lifts[i].size()) != v.count) throw InvalidInput("lift vector does not match vote counts");
    auto pos = std::find(v.ranking.begin(), v.ranking.end(), c) - v.ranking.begin();
    for (int k : lifts[i]) {
      if (k < 0 || k > pos) throw InvalidInput("lift moves candidate past the top");
      Ranking r = v.ranking;
      std::rotate(r.begin() + (pos - k), r.begin() + pos, r.begin() + pos + 1);
      if (!votes.empty() && votes.back().ranking == r) {
        ++votes.back().count;
      } else {
        votes.push_back({1, std::move(r), false});
      }
    }
  }
  return Election(e.num_candidates(), std::move(votes), e.names());
}

namespace {

class LiftSearch {
 public:
  LiftSearch(const Election& e, Candidate c, const DodgsonLimits& limits) : limits_(limits) {
    if (e.has_partial_votes()) throw InvalidInput("Dodgson scores need complete votes");
    if (c < 0 || c >= e.num_candidates()) throw InvalidInput("candidate out of range");
    need_ = dodgson_deficits(e, c);
    m_ = e.num_candidates();
    for (std::size_t g = 0; g < e.votes().size(); ++g) {
      const Vote& v = e.votes()[g];
      auto pos = std::find(v.ranking.begin(), v.ranking.end(), c) - v.ranking.begin();
      std::vector<Candidate> above;
      for (auto k = pos; k > 0; --k) above.push_back(v.ranking[k - 1]);
      for (int j = 0; j < v.count; ++j) {
        group_.push_back(static_cast<int>(g));
        above_.push_back(above);
      }
    }
    n_ = static_cast<int>(above_.size());
    // avail_[i][d]: voters at index >= i ranking d above c
    avail_.assign(n_ + 1, std::vector<int>(m_, 0));
    for (int i = n_ - 1; i >= 0; --i) {
      avail_[i] = avail_[i + 1];
      for (Candidate d : above_[i]) ++avail_[i][d];
    }
    lift_.assign(n_, 0);
    groups_ = static_cast<int>(e.votes().size());
  }

  int lower_bound() const { return std::accumulate(need_.begin(), need_.end(), 0); }

  int upper_bound() const {
    if (lower_bound() == 0) return 0;
    bool possible = true;
    for (Candidate d = 0; d < m_; ++d) possible = possible && need_[d] <= avail_[0][d];
    if (!possible) return -1;
    int total = 0;
    for (const auto& a : above_) total += static_cast<int>(a.size());
    return total;
  }

  bool run(int budget) {
    nodes_ = 0;
    remaining_ = lower_bound();
    return dfs(0, budget);
  }

  LiftVector witness() const {
    LiftVector out(groups_);
    for (int i = 0; i < n_; ++i) out[group_[i]].push_back(lift_[i]);
    return out;
  }

 private:
  bool dfs(int i, int budget) {
    if (remaining_ == 0) {
      for (int k = i; k < n_; ++k) lift_[k] = 0;
      return true;
    }
    if (i == n_ || remaining_ > budget) return false;
    if (++nodes_ > limits_.max_nodes) {
      throw ResourceLimit("Dodgson search exceeded " + std::to_string(limits_.max_nodes) + " nodes");
    }
    for (Candidate d = 0; d < m_; ++d) {
      if (need_[d] > avail_[i][d]) return false;
    }
    const auto& above = above_[i];
    int cap = std::min<int>(static_cast<int>(above.size()), budget);
    // identical voters take nonincreasing lifts
    if (i > 0 && group_[i] == group_[i - 1]) cap = std::min(cap, lift_[i - 1]);
    // Deepest lift first. A lift whose topmost passed candidate is no longer
    // needed is dominated by the one-shorter lift, so it is skipped.
    std::vector<Candidate> hit;
    for (int k = cap; k >= 1; --k) {
      if (need_[above[k - 1]] == 0) continue;
      hit.clear();
      for (int t = 0; t < k; ++t) {
        if (need_[above[t]] > 0) {
          --need_[above[t]];
          hit.push_back(above[t]);
        }
      }
      remaining_ -= static_cast<int>(hit.size());
      lift_[i] = k;
      bool ok = dfs(i + 1, budget - k);
      remaining_ += static_cast<int>(hit.size());
      for (Candidate d : hit) ++need_[d];
      if (ok) {
        lift_[i] = k;
        return true;
      }
    }
    lift_[i] = 0;
    return dfs(i + 1, budget);
  }

  DodgsonLimits limits_;
  int m_ = 0, n_ = 0, groups_ = 0;
  std::vector<int> need_;
  std::vector<int> group_;
  std::vector<std::vector<Candidate>> above_;
  std::vector<std::vector<int>> avail_;
  std::vector<int> lift_;
  int remaining_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<DodgsonScore> dodgson_within(const Election& e, Candidate c, int budget,
                                           const DodgsonLimits& limits) {
  LiftSearch s(e, c, limits);
  int ub = s.upper_bound();
  if (ub < 0) throw InvalidInput("candidate cannot become a Condorcet winner (no voters)");
  if (budget < s.lower_bound()) return std::nullopt;
  if (!s.run(budget)) return std::nullopt;
  LiftVector w = s.witness();
  int cost = 0;
  for (const auto& g : w) {
    for (int k : g) cost += k;
  }
  return DodgsonScore{cost, std::move(w)};
}

DodgsonScore dodgson_score(const Election& e, Candidate c, const DodgsonLimits& limits) {
  LiftSearch s(e, c, limits);
  int ub = s.upper_bound();
  if (ub < 0) throw InvalidInput("candidate cannot become a Condorcet winner (no voters)");
  for (int budget = s.lower_bound(); budget <= ub; ++budget) {
    if (s.run(budget)) {
      LiftVector w = s.witness();
      return DodgsonScore{budget, std::move(w)};
    }
  }
  throw InvariantViolation("Dodgson search found no witness within the trivial upper bound");
}

WinnerSet dodgson_winners(const Election& e, const DodgsonLimits& limits) {
  WinnerSet w;
  std::int64_t best = -1;
  for (Candidate c = 0; c < e.num_candidates(); ++c) {
    std::int64_t sc = dodgson_score(e, c, limits).score;
    w.scores.push_back(sc);
    if (best < 0 || sc < best) best = sc;
  }
  for (Candidate c = 0; c < e.num_candidates(); ++c) {
    if (w.scores[c] == best) w.winners.push_back(c);
  }
  return w;
}

bool is_dodgson_winner(const Election& e, Candidate c, const DodgsonLimits& limits) {
  int own = dodgson_score(e, c, limits).score;
  for (Candidate d = 0; d < e.num_candidates(); ++d) {
    if (d != c && own > 0 && dodgson_within(e, d, own - 1, limits)) return false;
  }
  return true;
}

}  // namespace hardctl
