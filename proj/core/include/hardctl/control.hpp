#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hardctl/condorcet.hpp"
#include "hardctl/dodgson.hpp"
#include "hardctl/election.hpp"
#include "hardctl/kemeny.hpp"

namespace hardctl {

enum class Rule { kemeny, kemeny_prime, young, dodgson };
enum class ControlKind { ccac, ccav, ccdv, ccdc, ccdc_star };

std::string to_string(Rule r);
std::string to_string(ControlKind k);
Rule rule_from_string(std::string_view s);
ControlKind control_kind_from_string(std::string_view s);

/// A constructive control instance.
///
/// `election` holds every candidate (registered and, for CCAC, unregistered)
/// and the registered voters. CCAV adds voters from `addable_voters`; CCDC
/// may delete any candidate but p; CCDC* only those in `deletable`.
struct ControlInstance {
  Rule rule = Rule::kemeny;
  ControlKind kind = ControlKind::ccac;
  Election election;
  std::vector<Candidate> unregistered;
  std::vector<Vote> addable_voters;
  std::vector<Candidate> deletable;
  int limit = 0;
  Candidate preferred = 0;

  friend bool operator==(const ControlInstance&, const ControlInstance&) = default;
};

void validate(const ControlInstance& inst);

struct RuleLimits {
  KemenyLimits kemeny{};
  YoungLimits young{};
  DodgsonLimits dodgson{};
};

struct ControlLimits {
  std::uint64_t max_subsets = std::uint64_t{1} << 22;
  RuleLimits rule{};
};

/// Co-winner test of candidate c under a rule.
bool is_winner(const Election& e, Candidate c, Rule rule, const RuleLimits& limits = {});

/// Winner set of an election under a rule, ascending.
std::vector<Candidate> winners(const Election& e, Rule rule, const RuleLimits& limits = {});

/// The chair's action set: candidates (CCAC, CCDC, CCDC*) or voter indices
/// into the expanded voter list (CCDV) or expanded addable list (CCAV).
std::vector<int> action_items(const ControlInstance& inst);

/// The election after performing `chosen` (a subset of action_items), and
/// the id of p in it.
struct ControlledElection {
  Election election;
  Candidate preferred = 0;
};
ControlledElection apply_action(const ControlInstance& inst, const std::vector<int>& chosen);

struct ControlOutcome {
  bool decision = false;
  std::vector<int> witness;  // ascending, in the ids of action_items
  std::uint64_t subsets_examined = 0;
  double elapsed_seconds = 0.0;
};

/// Enumerates action subsets of size <= limit, by size then
/// lexicographically, and reports the first one making p a winner.
ControlOutcome solve_control(const ControlInstance& inst, const ControlLimits& limits = {});

/// Control-instance format: the election format plus header lines
/// `rule:`, `kind:`, `unregistered: i,j`, `deletable: i,j`, `limit: k`,
/// `preferred: i`; vote lines after an `addable-voters:` line are addable.
ControlInstance parse_control(std::string_view text);
std::string format_control(const ControlInstance& inst);

}  // namespace hardctl
