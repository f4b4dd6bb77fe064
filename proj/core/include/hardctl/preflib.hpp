#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardctl/asp.hpp"
#include "hardctl/control.hpp"

namespace hardctl {

enum class SocDialect { legacy, modern };

/// A strict-complete-order preference file.
struct SocFile {
  std::string id;  // e.g. ED-9-2, taken from the file name
  int num_candidates = 0;
  std::vector<std::string> names;  // index = 0-based candidate id
  std::vector<Vote> votes;         // distinct votes, 0-based ids, counts >= 1
  std::vector<std::pair<std::string, std::string>> metadata;  // modern "# KEY: value" lines
  SocDialect dialect = SocDialect::modern;

  int total_voters() const;
  Election election() const;

  friend bool operator==(const SocFile&, const SocFile&) = default;
};

/// Accepts the legacy layout (candidate count, `i,name` lines, the
/// `voters,sum,distinct` line, `count,c1,...` lines) and the modern one
/// (`# KEY: value` metadata, `count: c1,...` lines).
SocFile parse_soc(std::string_view text, std::string id = {});
std::string format_soc(const SocFile& s, SocDialect dialect);
SocFile read_soc_file(const std::string& path);

/// ED-9-2 from ED-00009-00000002.soc or 00009-00000002.soc; otherwise the
/// file stem.
std::string soc_instance_id(const std::string& path);

/// The unregistered/limit split: u = ceil(m/5) held-out candidates, limit
/// ceil(u/3).
struct ExperimentSplit {
  int registered = 0;
  int unregistered = 0;
  int limit = 0;
};
ExperimentSplit experiment_split(int num_candidates);

/// Kemeny CCAC with candidate 1 (first declared) preferred and the last
/// u candidates unregistered. Throws InvalidInput below 4 candidates.
ControlInstance build_experiment_instance(const SocFile& s);

enum class RowOutcome { solved, timeout, oom, skipped, error };
std::string to_string(RowOutcome o);

struct ExperimentRow {
  std::string id;
  int registered = 0;
  int unregistered = 0;
  int voters = 0;
  std::optional<bool> decision;
  double seconds = 0.0;
  RowOutcome outcome = RowOutcome::skipped;
  std::string method;  // "asp" or "brute"
  std::string note;
};

struct ExperimentOptions {
  /// Used when solver_path is non-empty or the solver variable is set.
  SolverConfig solver;
  bool use_solver = false;
  /// Brute force is attempted up to this many candidates.
  int brute_max_candidates = 16;
  ControlLimits limits{};
  std::string work_dir;  // for .lp files; defaults to the temp directory
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  int solved = 0, timeouts = 0, oom = 0, skipped = 0, errors = 0;
};

/// One row per *.soc file in `dir`, in file-name order. Errors are
/// recorded per row and never abort the run.
ExperimentReport run_experiment(const std::string& dir, const ExperimentOptions& options);

/// Table-style report and delimited (CSV) rows with the same columns.
std::string format_table(const ExperimentReport& r);
std::string format_csv(const ExperimentReport& r);

}  // namespace hardctl
