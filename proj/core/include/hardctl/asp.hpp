#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardctl/control.hpp"

namespace hardctl {

/// Instance facts for the Kemeny-CCAC logic program. Candidate ids are
/// 1-based with registered candidates first (1..rcandnum) and unregistered
/// after them; distinct votes are numbered 1..prefnum in first-occurrence
/// order.
struct FactBase {
  int rcandnum = 0;
  int ucandnum = 0;
  int limit = 0;
  int preferred = 1;
  std::vector<std::vector<int>> prefs;  // prefs[i][j]: candidate at position j+1 of vote i+1
  std::vector<int> counts;              // voters per distinct vote

  int prefnum() const { return static_cast<int>(prefs.size()); }
  int voternum() const;

  friend bool operator==(const FactBase&, const FactBase&) = default;
};

/// Facts for a Kemeny CCAC instance. Registered candidates keep their
/// relative order, then the unregistered ones follow in ascending id order.
/// `asp_ids`, when given, receives the 1-based fact id of every candidate.
FactBase facts_from_ccac(const ControlInstance& inst, std::vector<int>* asp_ids = nullptr);

/// The instance a fact base describes, in fact numbering (fact id i is
/// candidate i-1), one vote line per distinct vote.
ControlInstance control_from_facts(const FactBase& facts);

std::string format_facts(const FactBase& facts);
FactBase parse_facts(std::string_view text);

/// The fixed guess/check/saturate rule set. Byte-stable.
const std::string& emit_program();

struct AspArtifact {
  std::string program_text;
  std::string fact_text;
  std::string path;  // combined file, empty until written
};

AspArtifact make_artifact(const FactBase& facts);

/// Writes program and facts into one file and records its path.
void write_artifact(AspArtifact& artifact, const std::string& path);

enum class AspOutcome { sat, unsat, timeout, oom, solver_error };
std::string to_string(AspOutcome o);

struct SolverConfig {
  std::string solver_path;
  double time_limit_seconds = 3600.0;
  std::size_t mem_limit_mb = 16384;
};

/// Environment variable naming the solver binary.
inline constexpr const char* kSolverEnv = "HARDCTL_ASP_SOLVER";

/// Picks `explicit_path` if non-empty, else the environment variable.
/// Throws ConfigError if neither names an executable file.
std::string resolve_solver(const std::string& explicit_path = {});

/// True when a solver is configured through the environment.
bool solver_configured();

struct AspRun {
  AspOutcome outcome = AspOutcome::solver_error;
  double elapsed_seconds = 0.0;
  int exit_status = -1;  // exit code, or 128 + signal
  std::vector<int> added;  // fact ids of added candidates in the first answer set
  std::string output;
};

/// Runs `solver_path <artifact.path>`, killing it after the time limit and
/// capping its address space. The outcome comes from the output tokens
/// SATISFIABLE / UNSATISFIABLE; sat means control is possible.
AspRun run_external(const AspArtifact& artifact, const SolverConfig& config);

struct CrossCheckReport {
  bool asp_decision = false;
  bool brute_decision = false;
  std::vector<Candidate> asp_witness;
  std::vector<Candidate> brute_witness;
  double asp_seconds = 0.0;
  double brute_seconds = 0.0;
};

std::string format_report(const CrossCheckReport& r);

/// Solves a Kemeny CCAC instance both ways. Throws InvariantViolation (with
/// both witnesses in the message) on disagreement, ResourceLimit if the
/// solver times out or runs out of memory.
CrossCheckReport cross_check(const ControlInstance& inst, const SolverConfig& config,
                             const ControlLimits& limits = {}, const std::string& work_dir = {});

}  // namespace hardctl
