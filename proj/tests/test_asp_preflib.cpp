#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "hardctl/asp.hpp"
#include "hardctl/error.hpp"
#include "hardctl/generate.hpp"
#include "hardctl/preflib.hpp"

using namespace hardctl;
namespace fs = std::filesystem;

namespace {

ControlInstance small_ccac() {
  // candidates 1..3, candidate 2 unregistered, p = 1
  return parse_control(
      "rule: kemeny\nkind: ccac\nlimit: 1\npreferred: 1\nunregistered: 2\n"
      "candidates: 3\n2: 2,1,3\n1: 1,3,2\n");
}

fs::path scratch_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("hardctl-test-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

const char* kLegacy =
    "4\n1,a\n2,b\n3,c\n4,d\n"
    "5,5,3\n"
    "2,1,2,3,4\n2,4,3,2,1\n1,2,1,4,3\n";

}  // namespace

TEST(AspFacts, RegisteredCandidatesFirst) {
  std::vector<int> ids;
  FactBase fb = facts_from_ccac(small_ccac(), &ids);
  EXPECT_EQ(fb.rcandnum, 2);
  EXPECT_EQ(fb.ucandnum, 1);
  EXPECT_EQ(ids, (std::vector<int>{1, 3, 2}));
  EXPECT_EQ(fb.preferred, 1);
  EXPECT_EQ(fb.voternum(), 3);
  ASSERT_EQ(fb.prefnum(), 2);
  EXPECT_EQ(fb.prefs[0], (std::vector<int>{3, 1, 2}));
  EXPECT_EQ(fb.counts, (std::vector<int>{2, 1}));
}

TEST(AspFacts, TextRoundTrip) {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    FactBase fb = facts_from_ccac(random_ccac(3 + draw(rng, 3), 1 + draw(rng, 3), 1 + draw(rng, 6), 1, rng));
    std::string text = format_facts(fb);
    EXPECT_EQ(parse_facts(text), fb);
    EXPECT_NE(text.find("prefnum(" + std::to_string(fb.prefnum()) + ")."), std::string::npos);
    EXPECT_EQ(facts_from_ccac(control_from_facts(fb)), fb);
  }
  EXPECT_THROW(parse_facts("prefnum(1).\nnonsense\n"), ParseError);
}

TEST(AspProgram, StableAndComplete) {
  const std::string& a = emit_program();
  EXPECT_EQ(&a, &emit_program());
  for (const char* rule : {
           "{ candidate(C) : ucandidate(C) } K :- limit(K).",
           "gpref(X,C) | ungpref(X,C) :- position(X), candidate(C).",
           ":- preferredCand(X), gpref(Y,X), position(Y), Y != 1.",
           "sat :- #sum{ M,C1,C2,pos : gwrankCp(C1,C2,M); -N,D1,D2,neg : gwrankC(D1,D2,N) } >= 0.",
           "sat :- preferredCand(X), gprefp(1,X).",
           ":- not sat.",
       }) {
    EXPECT_NE(a.find(rule), std::string::npos) << rule;
  }
  EXPECT_EQ(a.find("grepf"), std::string::npos);
}

TEST(AspArtifact, CombinedFile) {
  AspArtifact art = make_artifact(facts_from_ccac(small_ccac()));
  EXPECT_EQ(art.program_text, emit_program());
  fs::path dir = scratch_dir("artifact");
  write_artifact(art, (dir / "x.lp").string());
  std::ifstream in(art.path);
  std::string body((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(body.find(art.fact_text), std::string::npos);
  EXPECT_NE(body.find(art.program_text), std::string::npos);
}

TEST(AspSolver, MissingSolverIsConfigError) {
  EXPECT_THROW(resolve_solver("/nonexistent/solver"), ConfigError);
  if (!solver_configured()) EXPECT_THROW(resolve_solver(), ConfigError);
}

TEST(AspSolver, CrossChecksSmallInstances) {
  if (!solver_configured()) GTEST_SKIP() << "no solver in " << kSolverEnv;
  SolverConfig cfg;
  cfg.solver_path = resolve_solver();
  cfg.time_limit_seconds = 60;
  // p already wins with no additions: sat at k = 0
  auto inst = parse_control(
      "rule: kemeny\nkind: ccac\nlimit: 0\npreferred: 1\nunregistered: 3\n"
      "candidates: 3\n3: 1,2,3\n1: 2,1,3\n");
  auto rep = cross_check(inst, cfg, {}, scratch_dir("k0").string());
  EXPECT_TRUE(rep.asp_decision);
  Rng rng(55);
  for (int t = 0; t < 6; ++t) {
    auto r = random_ccac(3 + draw(rng, 2), 1 + draw(rng, 2), 2 + draw(rng, 4), draw(rng, 2), rng);
    auto rep2 = cross_check(r, cfg, {}, scratch_dir("rand").string());
    EXPECT_EQ(rep2.asp_decision, rep2.brute_decision);
  }
}

TEST(AspSolver, VoteOrderInvariance) {
  if (!solver_configured()) GTEST_SKIP() << "no solver in " << kSolverEnv;
  SolverConfig cfg;
  cfg.solver_path = resolve_solver();
  Rng rng(8);
  auto inst = random_ccac(4, 2, 5, 1, rng);
  auto votes = inst.election.votes();
  std::reverse(votes.begin(), votes.end());
  auto flipped = inst;
  flipped.election = Election(inst.election.num_candidates(), votes);
  auto a = cross_check(inst, cfg, {}, scratch_dir("inv1").string());
  auto b = cross_check(flipped, cfg, {}, scratch_dir("inv2").string());
  EXPECT_EQ(a.asp_decision, b.asp_decision);
}

TEST(Soc, LegacyAndModernRoundTrip) {
  SocFile s = parse_soc(kLegacy, "ED-1-1");
  EXPECT_EQ(s.dialect, SocDialect::legacy);
  EXPECT_EQ(s.num_candidates, 4);
  EXPECT_EQ(s.total_voters(), 5);
  EXPECT_EQ(s.names[3], "d");
  EXPECT_EQ(s.votes[1].ranking, (Ranking{3, 2, 1, 0}));
  for (auto d : {SocDialect::legacy, SocDialect::modern}) {
    SocFile again = parse_soc(format_soc(s, d), "ED-1-1");
    EXPECT_EQ(again.votes, s.votes);
    EXPECT_EQ(again.names, s.names);
    // formatting is a fixed point after one pass
    EXPECT_EQ(format_soc(again, d), format_soc(parse_soc(format_soc(again, d)), d));
  }
}

TEST(Soc, ModernMetadataAndMerging) {
  SocFile s = parse_soc(
      "# FILE NAME: x.soc\n# DATA TYPE: soc\n# NUMBER ALTERNATIVES: 3\n"
      "# ALTERNATIVE NAME 1: A\n# ALTERNATIVE NAME 2: B\n# ALTERNATIVE NAME 3: C\n"
      "2: 1,2,3\n1: 3,2,1\n1: 1,2,3\n");
  EXPECT_EQ(s.dialect, SocDialect::modern);
  ASSERT_EQ(s.votes.size(), 2U);
  EXPECT_EQ(s.votes[0].count, 3);
  EXPECT_EQ(s.names[1], "B");
  EXPECT_FALSE(s.metadata.empty());
}

TEST(Soc, ErrorsCarryLineNumbers) {
  try {
    parse_soc("3\n1,a\n2,b\n3,c\n2,2,1\n1,1,2\n1,1,2,3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6);
  }
  EXPECT_THROW(parse_soc("# NUMBER ALTERNATIVES: 3\n1: 1,2,4\n"), ParseError);
}

TEST(Soc, InstanceIds) {
  EXPECT_EQ(soc_instance_id("/d/ED-00009-00000002.soc"), "ED-9-2");
  EXPECT_EQ(soc_instance_id("00015-00000048.soc"), "ED-15-48");
  EXPECT_EQ(soc_instance_id("mine.soc"), "mine");
}

TEST(Experiment, Splits) {
  auto s7 = experiment_split(7);
  EXPECT_EQ(s7.registered, 5);
  EXPECT_EQ(s7.unregistered, 2);
  EXPECT_EQ(s7.limit, 1);
  auto s10 = experiment_split(10);
  EXPECT_EQ(s10.registered, 8);
  EXPECT_EQ(s10.unregistered, 2);
  auto s14 = experiment_split(14);
  EXPECT_EQ(s14.unregistered, 3);
  EXPECT_EQ(s14.limit, 1);
  auto s4 = experiment_split(4);
  EXPECT_EQ(s4.registered, 3);
  EXPECT_EQ(s4.unregistered, 1);
}

TEST(Experiment, BuildInstance) {
  auto inst = build_experiment_instance(parse_soc(kLegacy));
  EXPECT_EQ(inst.kind, ControlKind::ccac);
  EXPECT_EQ(inst.preferred, 0);
  EXPECT_EQ(inst.unregistered, (std::vector<Candidate>{3}));
  EXPECT_EQ(inst.limit, 1);
  EXPECT_THROW(build_experiment_instance(parse_soc("3\n1,a\n2,b\n3,c\n1,1,1\n1,1,2,3\n")), InvalidInput);
}

TEST(Experiment, RowsAreIsolated) {
  fs::path dir = scratch_dir("exp");
  std::ofstream(dir / "ED-00001-00000001.soc") << kLegacy;
  std::ofstream(dir / "ED-00001-00000002.soc") << "garbage\n";
  std::ofstream(dir / "notes.txt") << "ignored\n";
  ExperimentOptions opt;
  opt.use_solver = false;
  auto rep = run_experiment(dir.string(), opt);
  ASSERT_EQ(rep.rows.size(), 2U);
  EXPECT_EQ(rep.rows[0].id, "ED-1-1");
  EXPECT_EQ(rep.rows[0].outcome, RowOutcome::solved);
  EXPECT_EQ(rep.rows[0].method, "brute");
  EXPECT_TRUE(rep.rows[0].decision.has_value());
  EXPECT_EQ(rep.rows[1].outcome, RowOutcome::error);
  EXPECT_EQ(rep.solved, 1);
  EXPECT_EQ(rep.errors, 1);
  EXPECT_NE(format_table(rep).find("ED-1-1"), std::string::npos);
  std::string csv = format_csv(rep);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}
