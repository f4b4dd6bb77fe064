#include "hardctl/kemeny.hpp"

#include <algorithm>
#include <string>

#include "hardctl/error.hpp"

namespace hardctl {

namespace {

std::vector<int> positions_of(std::span<const Candidate> r, int m) {
  if (static_cast<int>(r.size()) != m) throw InvalidInput("ranking is not complete over the candidates");
  std::vector<int> pos(m, -1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 0 || r[i] >= m || pos[r[i]] >= 0) throw InvalidInput("ranking is not a permutation");
    pos[r[i]] = static_cast<int>(i);
  }
  return pos;
}

std::int64_t pairwise_score(const PairwiseMatrix& pm, std::span<const Candidate> consensus) {
  positions_of(consensus, pm.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < consensus.size(); ++i) {
    for (std::size_t j = i + 1; j < consensus.size(); ++j) total += pm.prefers(consensus[j], consensus[i]);
  }
  return total;
}

void check_variant(const Election& e, KemenyVariant variant) {
  if (variant == KemenyVariant::kemeny && e.has_partial_votes()) {
    throw InvalidInput("partial votes require the kemeny_prime variant");
  }
}

}  // namespace

int kendall_tau(std::span<const Candidate> r1, std::span<const Candidate> r2) {
  if (r1.size() != r2.size()) throw InvalidInput("kendall_tau: rankings differ in length");
  const int m = static_cast<int>(r1.size());
  auto p1 = positions_of(r1, m);
  auto p2 = positions_of(r2, m);
  int d = 0;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if ((p1[a] < p1[b]) != (p2[a] < p2[b])) ++d;
    }
  }
  return d;
}

std::int64_t kemeny_score(const Election& e, std::span<const Candidate> consensus) {
  check_variant(e, KemenyVariant::kemeny);
  return pairwise_score(PairwiseMatrix(e), consensus);
}

std::int64_t kemeny_prime_score(const Election& e, std::span<const Candidate> consensus) {
  return pairwise_score(PairwiseMatrix(e), consensus);
}

std::int64_t kemeny_ordering(const PairwiseMatrix& pm, LinearOrdering& out) {
  std::int64_t base = 0;
  for (int a = 0; a < pm.size(); ++a) {
    for (int b = a + 1; b < pm.size(); ++b) {
      base += std::min(pm.prefers(a, b), pm.prefers(b, a));
      std::int64_t margin = pm.margin(a, b);
      if (margin > 0) out.add_arc(a, b, margin);
      if (margin < 0) out.add_arc(b, a, -margin);
    }
  }
  return base;
}

KemenyResult kemeny_winners(const Election& e, KemenyVariant variant, const KemenyLimits& limits,
                            bool with_consensus) {
  check_variant(e, variant);
  const int m = e.num_candidates();
  if (m > limits.max_candidates || m > LinearOrdering::kMaxItems) {
    throw ResourceLimit("Kemeny winner determination limited to " + std::to_string(limits.max_candidates) +
                        " candidates");
  }
  LinearOrdering lo(m, limits.ordering);
  std::int64_t base = kemeny_ordering(PairwiseMatrix(e), lo);
  KemenyResult r;
  r.score = base + lo.optimum();
  r.winners = lo.optimal_firsts(lo.all());
  if (with_consensus) r.consensus = lo.lex_min_optimal_order(lo.all());
  return r;
}

bool is_kemeny_winner(const Election& e, Candidate c, KemenyVariant variant, const KemenyLimits& limits) {
  check_variant(e, variant);
  const int m = e.num_candidates();
  if (c < 0 || c >= m) throw InvalidInput("candidate out of range");
  if (m > limits.max_candidates || m > LinearOrdering::kMaxItems) {
    throw ResourceLimit("Kemeny winner determination limited to " + std::to_string(limits.max_candidates) +
                        " candidates");
  }
  LinearOrdering lo(m, limits.ordering);
  kemeny_ordering(PairwiseMatrix(e), lo);
  return lo.can_be_first(c, lo.all());
}

}  // namespace hardctl
