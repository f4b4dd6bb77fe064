#include <gtest/gtest.h>

#include "hardctl/chains.hpp"
#include "hardctl/error.hpp"

using namespace hardctl;

TEST(Chains, NamesAreKnown) {
  auto names = chain_names();
  EXPECT_EQ(names.size(), 6U);
  EXPECT_THROW(verify_chain_random("nope", 1, 1), InvalidInput);
  EXPECT_THROW(run_chain("gnd-vcms", Cnf3{1, {}}), InvalidInput);
}

TEST(Chains, SatDodgsonExhaustive) {
  auto rep = verify_chain_exhaustive("sat3-dodgson-score", 1);
  EXPECT_EQ(rep.instances, 14);
  EXPECT_TRUE(rep.disagreements.empty()) << format_chain_report(rep);
}

TEST(Chains, NodeDeletionExhaustive) {
  for (const char* c : {"gnd-vcms", "gnd-ismd"}) {
    auto rep = verify_chain_exhaustive(c, 3);
    EXPECT_EQ(rep.instances, 8 * 3 * 2);
    EXPECT_TRUE(rep.disagreements.empty()) << format_chain_report(rep);
  }
}

TEST(Chains, QsatChainsRandom) {
  for (const char* c : {"qsat2-kemeny-ccdcstar", "qsat2-kemeny-ccac", "qsat2-kemeny-prime-ccav"}) {
    auto rep = verify_chain_random(c, 4, 11);
    EXPECT_EQ(rep.instances, 4);
    EXPECT_TRUE(rep.disagreements.empty()) << format_chain_report(rep);
    EXPECT_NE(format_chain_report(rep).find("all sub-decisions agree"), std::string::npos);
  }
}

TEST(Chains, RunRecordsEveryStep) {
  Qbf2 f{1, {{{0, false}, {1, true}, {1, true}}}};
  auto run = run_chain("qsat2-kemeny-ccac", f);
  ASSERT_EQ(run.steps.size(), 4U);
  EXPECT_EQ(run.steps[0].problem, "qsat2");
  EXPECT_EQ(run.steps[3].problem, "kemeny-ccac");
  EXPECT_TRUE(run.agree());
}
