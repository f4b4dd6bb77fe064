#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hardctl/formula.hpp"
#include "hardctl/graph_control.hpp"

namespace hardctl {

/// Reduction chains whose decisions must agree at every step:
///   qsat2-kemeny-ccdcstar    QSAT2 -> VCMS -> FASMS -> Kemeny CCDC*
///   qsat2-kemeny-ccac        QSAT2 -> VCMA -> FASMA -> Kemeny CCAC
///   qsat2-kemeny-prime-ccav  QSAT2 -> VCMA -> FASMAA -> Kemeny' CCAV
///   sat3-dodgson-score       3SAT -> DodgsonScore(q) <= 4m+n
///   gnd-vcms, gnd-ismd       generalized node deletion -> VCMS / ISMD
std::vector<std::string> chain_names();

struct ChainStep {
  std::string problem;
  bool decision = false;
};

struct ChainRun {
  std::string source;  // the source instance in its text format
  std::vector<ChainStep> steps;
  bool agree() const;
};

ChainRun run_chain(std::string_view chain, const Qbf2& f);
ChainRun run_chain(std::string_view chain, const Cnf3& f);
ChainRun run_chain(std::string_view chain, const GraphControlInstance& gnd);

struct ChainReport {
  std::string chain;
  int instances = 0;
  int yes = 0;
  std::vector<ChainRun> disagreements;
};

/// Every formula with up to two clauses over n variables per block (or n
/// variables for 3SAT), or every graph on n vertices with k <= 2 and
/// ell <= 2 for the node-deletion chains.
ChainReport verify_chain_exhaustive(std::string_view chain, int n);

/// `trials` seeded random sources (n <= 2 per block, up to 3 clauses; or
/// graphs on at most 6 vertices).
ChainReport verify_chain_random(std::string_view chain, int trials, std::uint64_t seed);

std::string format_chain_report(const ChainReport& r);

}  // namespace hardctl
