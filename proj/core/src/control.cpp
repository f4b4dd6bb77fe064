#include "hardctl/control.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <set>
#include <sstream>

#include "hardctl/error.hpp"
#include "hardctl/subsets.hpp"
#include "text_util.hpp"

namespace hardctl {

namespace {

constexpr std::array<std::pair<Rule, const char*>, 4> kRuleNames{{
    {Rule::kemeny, "kemeny"},
    {Rule::kemeny_prime, "kemeny_prime"},
    {Rule::young, "young"},
    {Rule::dodgson, "dodgson"},
}};

constexpr std::array<std::pair<ControlKind, const char*>, 5> kKindNames{{
    {ControlKind::ccac, "ccac"},
    {ControlKind::ccav, "ccav"},
    {ControlKind::ccdv, "ccdv"},
    {ControlKind::ccdc, "ccdc"},
    {ControlKind::ccdc_star, "ccdc_star"},
}};

template <class E, std::size_t N>
E lookup(const std::array<std::pair<E, const char*>, N>& table, std::string_view s, const char* what) {
  for (auto [v, name] : table) {
    if (s == name) return v;
  }
  throw InvalidInput(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

template <class E, std::size_t N>
std::string name_of(const std::array<std::pair<E, const char*>, N>& table, E e) {
  for (auto [v, name] : table) {
    if (v == e) return name;
  }
  return "?";
}

void check_candidate_set(const std::vector<Candidate>& cs, int m, const char* what) {
  std::set<Candidate> seen;
  for (Candidate c : cs) {
    if (c < 0 || c >= m) throw InvalidInput(std::string(what) + " candidate out of range");
    if (!seen.insert(c).second) throw InvalidInput(std::string(what) + " candidate listed twice");
  }
}

bool contains(const std::vector<Candidate>& v, Candidate c) { return std::find(v.begin(), v.end(), c) != v.end(); }

std::vector<Vote> expand(const std::vector<Vote>& votes) {
  std::vector<Vote> out;
  for (const Vote& v : votes) {
    for (int i = 0; i < v.count; ++i) out.push_back({1, v.ranking, v.partial});
  }
  return out;
}

}  // namespace

std::string to_string(Rule r) { return name_of(kRuleNames, r); }
std::string to_string(ControlKind k) { return name_of(kKindNames, k); }
Rule rule_from_string(std::string_view s) { return lookup(kRuleNames, s, "rule"); }
ControlKind control_kind_from_string(std::string_view s) { return lookup(kKindNames, s, "control kind"); }

void validate(const ControlInstance& inst) {
  const int m = inst.election.num_candidates();
  if (inst.limit < 0) throw InvalidInput("limit must be nonnegative");
  if (inst.preferred < 0 || inst.preferred >= m) throw InvalidInput("preferred candidate out of range");
  check_candidate_set(inst.unregistered, m, "unregistered");
  check_candidate_set(inst.deletable, m, "deletable");
  if (contains(inst.unregistered, inst.preferred)) throw InvalidInput("preferred candidate must be registered");
  if (contains(inst.deletable, inst.preferred)) throw InvalidInput("preferred candidate must not be deletable");
  if (inst.kind != ControlKind::ccac && !inst.unregistered.empty()) {
    throw InvalidInput("unregistered candidates only apply to ccac");
  }
  if (inst.kind != ControlKind::ccdc_star && !inst.deletable.empty()) {
    throw InvalidInput("a deletable set only applies to ccdc_star");
  }
  if (inst.kind != ControlKind::ccav && !inst.addable_voters.empty()) {
    throw InvalidInput("addable voters only apply to ccav");
  }
  // addable voters must be valid votes over the same candidates
  Election(m, inst.addable_voters);
  bool partial = inst.election.has_partial_votes() ||
                 std::any_of(inst.addable_voters.begin(), inst.addable_voters.end(),
                             [](const Vote& v) { return v.partial; });
  if (partial && inst.rule != Rule::kemeny_prime) {
    throw InvalidInput("partial votes are only meaningful under kemeny_prime");
  }
}

bool is_winner(const Election& e, Candidate c, Rule rule, const RuleLimits& limits) {
  switch (rule) {
    case Rule::kemeny:
      return is_kemeny_winner(e, c, KemenyVariant::kemeny, limits.kemeny);
    case Rule::kemeny_prime:
      return is_kemeny_winner(e, c, KemenyVariant::kemeny_prime, limits.kemeny);
    case Rule::young: {
      auto w = young_winners(e, limits.young).winners;
      return std::binary_search(w.begin(), w.end(), c);
    }
    case Rule::dodgson:
      return is_dodgson_winner(e, c, limits.dodgson);
  }
  throw InvariantViolation("unhandled rule");
}

std::vector<Candidate> winners(const Election& e, Rule rule, const RuleLimits& limits) {
  switch (rule) {
    case Rule::kemeny:
      return kemeny_winners(e, KemenyVariant::kemeny, limits.kemeny, false).winners;
    case Rule::kemeny_prime:
      return kemeny_winners(e, KemenyVariant::kemeny_prime, limits.kemeny, false).winners;
    case Rule::young:
      return young_winners(e, limits.young).winners;
    case Rule::dodgson:
      return dodgson_winners(e, limits.dodgson).winners;
  }
  throw InvariantViolation("unhandled rule");
}

std::vector<int> action_items(const ControlInstance& inst) {
  std::vector<int> items;
  const int m = inst.election.num_candidates();
  switch (inst.kind) {
    case ControlKind::ccac:
      items = inst.unregistered;
      break;
    case ControlKind::ccdc:
      for (Candidate c = 0; c < m; ++c) {
        if (c != inst.preferred) items.push_back(c);
      }
      break;
    case ControlKind::ccdc_star:
      items = inst.deletable;
      break;
    case ControlKind::ccdv:
      for (int i = 0; i < inst.election.total_voters(); ++i) items.push_back(i);
      break;
    case ControlKind::ccav: {
      int n = 0;
      for (const Vote& v : inst.addable_voters) n += v.count;
      for (int i = 0; i < n; ++i) items.push_back(i);
      break;
    }
  }
  std::sort(items.begin(), items.end());
  return items;
}

ControlledElection apply_action(const ControlInstance& inst, const std::vector<int>& chosen) {
  const Election& e = inst.election;
  const int m = e.num_candidates();
  auto keep_all_but = [&](const std::vector<Candidate>& removed) {
    std::vector<Candidate> kept;
    for (Candidate c = 0; c < m; ++c) {
      if (!contains(removed, c)) kept.push_back(c);
    }
    auto p = static_cast<Candidate>(std::find(kept.begin(), kept.end(), inst.preferred) - kept.begin());
    return ControlledElection{restrict_election(e, kept), p};
  };
  switch (inst.kind) {
    case ControlKind::ccac: {
      std::vector<Candidate> removed;
      for (Candidate c : inst.unregistered) {
        if (!contains(chosen, c)) removed.push_back(c);
      }
      return keep_all_but(removed);
    }
    case ControlKind::ccdc:
    case ControlKind::ccdc_star:
      return keep_all_but(chosen);
    case ControlKind::ccdv: {
      std::vector<Vote> kept;
      auto all = expand(e.votes());
      for (int i = 0; i < static_cast<int>(all.size()); ++i) {
        if (!std::binary_search(chosen.begin(), chosen.end(), i)) kept.push_back(all[i]);
      }
      return {Election(m, std::move(kept), e.names()), inst.preferred};
    }
    case ControlKind::ccav: {
      std::vector<Vote> votes = e.votes();
      auto extra = expand(inst.addable_voters);
      for (int i : chosen) votes.push_back(extra.at(i));
      return {Election(m, std::move(votes), e.names()), inst.preferred};
    }
  }
  throw InvariantViolation("unhandled control kind");
}

ControlOutcome solve_control(const ControlInstance& inst, const ControlLimits& limits) {
  validate(inst);
  auto start = std::chrono::steady_clock::now();
  std::vector<int> items = action_items(inst);
  const int n = static_cast<int>(items.size());
  check_subset_budget(n, inst.limit, limits.max_subsets, to_string(inst.kind));
  std::vector<int> chosen;
  ControlOutcome out;
  out.subsets_examined = for_each_small_subset(n, inst.limit, [&](const std::vector<int>& idx) {
    chosen.clear();
    for (int i : idx) chosen.push_back(items[i]);
    auto ce = apply_action(inst, chosen);
    if (is_winner(ce.election, ce.preferred, inst.rule, limits.rule)) {
      out.decision = true;
      out.witness = chosen;
      return true;
    }
    return false;
  });
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------- text

namespace {

std::vector<Candidate> parse_id_list(std::string_view s, int line_no) {
  std::vector<Candidate> out;
  s = detail::trim(s);
  if (s.empty()) return out;
  for (auto tok : detail::split(s, ',')) out.push_back(static_cast<Candidate>(detail::to_int(tok, line_no) - 1));
  return out;
}

std::string id_list(const std::vector<Candidate>& cs) {
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cs[i] + 1);
  }
  return out;
}

}  // namespace

ControlInstance parse_control(std::string_view text) {
  ControlInstance inst;
  bool have_rule = false, have_kind = false, have_limit = false, have_pref = false, in_addable = false;
  std::string election_text;
  int line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto line = detail::trim(raw);
    auto value = [&](std::size_t prefix) { return detail::trim(line.substr(prefix)); };
    std::string keep;  // line handed to the election parser (blank keeps numbering)
    if (line.empty() || line.front() == '#') {
    } else if (detail::starts_with(line, "rule:")) {
      inst.rule = rule_from_string(value(5));
      have_rule = true;
    } else if (detail::starts_with(line, "kind:")) {
      inst.kind = control_kind_from_string(value(5));
      have_kind = true;
    } else if (detail::starts_with(line, "unregistered:")) {
      inst.unregistered = parse_id_list(value(13), line_no);
    } else if (detail::starts_with(line, "deletable:")) {
      inst.deletable = parse_id_list(value(10), line_no);
    } else if (detail::starts_with(line, "limit:")) {
      inst.limit = static_cast<int>(detail::to_int(value(6), line_no));
      have_limit = true;
    } else if (detail::starts_with(line, "preferred:")) {
      inst.preferred = static_cast<Candidate>(detail::to_int(value(10), line_no) - 1);
      have_pref = true;
    } else if (line == "addable-voters:") {
      in_addable = true;
    } else if (in_addable) {
      inst.addable_voters.push_back(parse_vote_line(line, line_no));
    } else {
      keep = std::string(line);
    }
    election_text += keep;
    election_text += '\n';
  }
  if (!have_rule || !have_kind || !have_limit || !have_pref) {
    throw ParseError(line_no, "control instance needs rule:, kind:, limit: and preferred: lines");
  }
  inst.election = parse_election(election_text);
  try {
    validate(inst);
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ParseError(line_no, e.what());
  }
  return inst;
}

std::string format_control(const ControlInstance& inst) {
  std::ostringstream os;
  os << "rule: " << to_string(inst.rule) << '\n';
  os << "kind: " << to_string(inst.kind) << '\n';
  os << "limit: " << inst.limit << '\n';
  os << "preferred: " << inst.preferred + 1 << '\n';
  if (!inst.unregistered.empty()) os << "unregistered: " << id_list(inst.unregistered) << '\n';
  if (!inst.deletable.empty()) os << "deletable: " << id_list(inst.deletable) << '\n';
  os << format_election(inst.election);
  if (inst.kind == ControlKind::ccav) {
    os << "addable-voters:\n";
    for (const Vote& v : inst.addable_voters) os << format_vote_line(v) << '\n';
  }
  return os.str();
}

}  // namespace hardctl
