#include <gtest/gtest.h>

#include <numeric>

#include "hardctl/error.hpp"
#include "hardctl/generate.hpp"
#include "hardctl/ordering.hpp"

using namespace hardctl;

namespace {

std::int64_t brute_optimum(const LinearOrdering& lo, std::vector<int>* firsts) {
  std::vector<int> order(lo.size());
  std::iota(order.begin(), order.end(), 0);
  std::int64_t best = INT64_MAX;
  do {
    std::int64_t c = lo.cost(order);
    if (c < best) {
      best = c;
      firsts->clear();
    }
    if (c == best && std::find(firsts->begin(), firsts->end(), order[0]) == firsts->end()) firsts->push_back(order[0]);
  } while (std::next_permutation(order.begin(), order.end()));
  std::sort(firsts->begin(), firsts->end());
  return best;
}

LinearOrdering random_ordering(Rng& rng, int n, OrderingLimits lim) {
  LinearOrdering lo(n, lim);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && draw(rng, 3) == 0) lo.add_arc(u, v, 1 + draw(rng, 4));
    }
  }
  return lo;
}

}  // namespace

TEST(Ordering, DpAndHittingSetAgreeWithPermutations) {
  OrderingLimits hs;
  hs.dp_max_component = 0;  // force the hitting-set path
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    Rng a(seed), b(seed);
    const int n = 2 + static_cast<int>(seed % 6);
    LinearOrdering dp = random_ordering(a, n, {});
    LinearOrdering bb = random_ordering(b, n, hs);
    std::vector<int> firsts;
    std::int64_t truth = brute_optimum(dp, &firsts);
    ASSERT_EQ(dp.optimum(), truth);
    ASSERT_EQ(bb.optimum(), truth);
    EXPECT_EQ(dp.optimal_firsts(dp.all()), firsts);
    EXPECT_EQ(bb.optimal_firsts(bb.all()), firsts);
    auto lex = dp.lex_min_optimal_order(dp.all());
    EXPECT_EQ(dp.cost(lex), truth);
  }
}

TEST(Ordering, ComponentsAreTopological) {
  LinearOrdering lo(4);
  lo.add_arc(0, 1, 1);
  lo.add_arc(1, 0, 2);
  lo.add_arc(1, 2, 1);
  lo.add_arc(3, 2, 1);
  auto comps = lo.components(lo.all());
  ASSERT_EQ(comps.size(), 3U);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) EXPECT_EQ(lo.weight_between(comps[j], comps[i]), 0);
  }
  EXPECT_EQ(lo.optimum(), 1);
}

TEST(Ordering, WithFirstAndSubsets) {
  LinearOrdering lo(3);
  lo.add_arc(0, 1, 3);
  lo.add_arc(1, 2, 3);
  lo.add_arc(2, 0, 1);
  EXPECT_EQ(lo.optimum(), 1);
  EXPECT_EQ(lo.optimum_with_first(1, lo.all()), 3);
  EXPECT_TRUE(lo.can_be_first(0, lo.all()));
  EXPECT_FALSE(lo.can_be_first(2, lo.all()));
  EXPECT_EQ(lo.optimum(0b011), 0);
}

TEST(Ordering, RejectsSelfArcsAndOversize) {
  LinearOrdering lo(2);
  EXPECT_THROW(lo.add_arc(1, 1, 1), InvalidInput);
  EXPECT_THROW(LinearOrdering(65), ResourceLimit);
}

TEST(Ordering, NodeCapRaisesResourceLimit) {
  OrderingLimits lim;
  lim.dp_max_component = 0;
  lim.max_search_nodes = 1;
  Rng rng(5);
  LinearOrdering lo(12, lim);
  for (int u = 0; u < 12; ++u) {
    for (int v = u + 1; v < 12; ++v) draw(rng, 2) ? lo.add_arc(u, v, 1) : lo.add_arc(v, u, 1);
  }
  EXPECT_THROW(lo.optimum(), ResourceLimit);
}
