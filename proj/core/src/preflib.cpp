#include "hardctl/preflib.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "hardctl/error.hpp"
#include "text_util.hpp"

namespace hardctl {

int SocFile::total_voters() const {
  int total = 0;
  for (const Vote& v : votes) total += v.count;
  return total;
}

Election SocFile::election() const { return Election(num_candidates, votes, names); }

namespace {

Ranking parse_ranking(std::span<const std::string_view> ids, int m, int line_no) {
  if (static_cast<int>(ids.size()) != m) {
    throw ParseError(line_no, "ranking lists " + std::to_string(ids.size()) + " of " + std::to_string(m) +
                                  " candidates");
  }
  Ranking r;
  std::vector<bool> seen(m, false);
  for (auto tok : ids) {
    if (!tok.empty() && tok.front() == '{') throw ParseError(line_no, "ties are not strict orders");
    long long c = detail::to_int(tok, line_no);
    if (c < 1 || c > m) throw ParseError(line_no, "candidate id out of range");
    if (seen[c - 1]) throw ParseError(line_no, "candidate ranked twice");
    seen[c - 1] = true;
    r.push_back(static_cast<Candidate>(c - 1));
  }
  return r;
}

int positive_count(std::string_view tok, int line_no) {
  long long c = detail::to_int(tok, line_no);
  if (c < 1) throw ParseError(line_no, "vote count must be positive");
  return static_cast<int>(c);
}

SocFile parse_legacy(const std::vector<std::string_view>& lines) {
  SocFile s;
  s.dialect = SocDialect::legacy;
  std::size_t i = 0;
  auto next = [&](const char* what) {
    while (i < lines.size() && detail::trim(lines[i]).empty()) ++i;
    if (i >= lines.size()) throw ParseError(static_cast<int>(i), std::string("missing ") + what);
    return detail::trim(lines[i++]);
  };
  auto line_no = [&] { return static_cast<int>(i); };
  s.num_candidates = static_cast<int>(detail::to_int(next("candidate count"), line_no()));
  if (s.num_candidates < 1) throw ParseError(line_no(), "candidate count must be positive");
  s.names.resize(s.num_candidates);
  for (int k = 0; k < s.num_candidates; ++k) {
    auto line = next("candidate name");
    auto comma = line.find(',');
    if (comma == std::string_view::npos) throw ParseError(line_no(), "expected 'id,name'");
    long long id = detail::to_int(line.substr(0, comma), line_no());
    if (id != k + 1) throw ParseError(line_no(), "candidate names out of order");
    s.names[k] = std::string(detail::trim(line.substr(comma + 1)));
  }
  auto totals = detail::split(next("voter totals"), ',');
  if (totals.size() != 3) throw ParseError(line_no(), "expected 'voters,sum,distinct'");
  long long voters = detail::to_int(totals[0], line_no());
  long long distinct = detail::to_int(totals[2], line_no());
  for (long long k = 0; k < distinct; ++k) {
    auto parts = detail::split(next("vote line"), ',');
    int count = positive_count(parts[0], line_no());
    std::vector<std::string_view> ids(parts.begin() + 1, parts.end());
    s.votes.push_back({count, parse_ranking(ids, s.num_candidates, line_no()), false});
  }
  while (i < lines.size()) {
    if (!detail::trim(lines[i++]).empty()) throw ParseError(line_no(), "more vote lines than declared");
  }
  if (s.total_voters() != voters) throw ParseError(line_no(), "vote counts disagree with the voter total");
  return s;
}

SocFile parse_modern(const std::vector<std::string_view>& lines) {
  SocFile s;
  s.dialect = SocDialect::modern;
  int declared = -1;
  std::vector<std::pair<int, Ranking>> pending;
  std::vector<int> counts;
  int line_no = 0;
  for (auto raw : lines) {
    ++line_no;
    auto line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = detail::trim(line.substr(1));
      auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      std::string key(detail::trim(body.substr(0, colon)));
      std::string value(detail::trim(body.substr(colon + 1)));
      if (key == "NUMBER ALTERNATIVES") {
        declared = static_cast<int>(detail::to_int(value, line_no));
        if (declared < 1) throw ParseError(line_no, "candidate count must be positive");
        s.names.resize(declared);
      } else if (detail::starts_with(key, "ALTERNATIVE NAME ")) {
        long long id = detail::to_int(std::string_view(key).substr(17), line_no);
        if (declared < 0 || id < 1 || id > declared) throw ParseError(line_no, "alternative name out of range");
        s.names[id - 1] = value;
      } else {
        s.metadata.emplace_back(key, value);
      }
      continue;
    }
    if (declared < 0) throw ParseError(line_no, "vote line before NUMBER ALTERNATIVES");
    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'count: ranking'");
    int count = positive_count(line.substr(0, colon), line_no);
    auto ids = detail::split(line.substr(colon + 1), ',');
    s.votes.push_back({count, parse_ranking(ids, declared, line_no), false});
  }
  if (declared < 0) throw ParseError(line_no, "missing NUMBER ALTERNATIVES");
  s.num_candidates = declared;
  // the counters are derived data; keep them consistent on output
  auto drop = [&](const char* key) {
    std::erase_if(s.metadata, [&](const auto& kv) { return kv.first == key; });
  };
  for (const auto& [k, v] : s.metadata) {
    if (k == "NUMBER VOTERS" && detail::to_int(v, 0) != s.total_voters()) {
      throw ParseError(line_no, "vote counts disagree with NUMBER VOTERS");
    }
    if (k == "NUMBER UNIQUE ORDERS" && detail::to_int(v, 0) != static_cast<long long>(s.votes.size())) {
      throw ParseError(line_no, "vote lines disagree with NUMBER UNIQUE ORDERS");
    }
  }
  drop("NUMBER VOTERS");
  drop("NUMBER UNIQUE ORDERS");
  return s;
}

}  // namespace

SocFile parse_soc(std::string_view text, std::string id) {
  auto lines = detail::split_lines(text);
  bool modern = false;
  for (auto l : lines) {
    auto t = detail::trim(l);
    if (t.empty()) continue;
    modern = t.front() == '#';
    break;
  }
  SocFile s = modern ? parse_modern(lines) : parse_legacy(lines);
  // duplicate distinct orders are merged so the file is a vote multiset
  std::vector<Vote> merged;
  for (Vote& v : s.votes) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Vote& w) { return w.ranking == v.ranking; });
    if (it == merged.end()) {
      merged.push_back(std::move(v));
    } else {
      it->count += v.count;
    }
  }
  s.votes = std::move(merged);
  s.id = std::move(id);
  return s;
}

std::string format_soc(const SocFile& s, SocDialect dialect) {
  std::ostringstream os;
  auto ranking = [&](const Vote& v) {
    std::string r;
    for (std::size_t i = 0; i < v.ranking.size(); ++i) r += (i ? "," : "") + std::to_string(v.ranking[i] + 1);
    return r;
  };
  if (dialect == SocDialect::legacy) {
    os << s.num_candidates << '\n';
    for (int c = 0; c < s.num_candidates; ++c) os << c + 1 << ',' << s.names[c] << '\n';
    os << s.total_voters() << ',' << s.total_voters() << ',' << s.votes.size() << '\n';
    for (const Vote& v : s.votes) os << v.count << ',' << ranking(v) << '\n';
  } else {
    for (const auto& [k, v] : s.metadata) os << "# " << k << ": " << v << '\n';
    os << "# NUMBER ALTERNATIVES: " << s.num_candidates << '\n';
    os << "# NUMBER VOTERS: " << s.total_voters() << '\n';
    os << "# NUMBER UNIQUE ORDERS: " << s.votes.size() << '\n';
    for (int c = 0; c < s.num_candidates; ++c) os << "# ALTERNATIVE NAME " << c + 1 << ": " << s.names[c] << '\n';
    for (const Vote& v : s.votes) os << v.count << ": " << ranking(v) << '\n';
  }
  return os.str();
}

std::string soc_instance_id(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  std::string digits = stem;
  if (detail::starts_with(digits, "ED-")) digits = digits.substr(3);
  auto dash = digits.find('-');
  if (dash != std::string::npos) {
    try {
      long long a = detail::to_int(std::string_view(digits).substr(0, dash), 0);
      long long b = detail::to_int(std::string_view(digits).substr(dash + 1), 0);
      return "ED-" + std::to_string(a) + "-" + std::to_string(b);
    } catch (const ParseError&) {
    }
  }
  return stem;
}

SocFile read_soc_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_soc(buf.str(), soc_instance_id(path));
}

ExperimentSplit experiment_split(int m) {
  ExperimentSplit s;
  s.unregistered = (m + 4) / 5;
  s.registered = m - s.unregistered;
  s.limit = (s.unregistered + 2) / 3;
  return s;
}

ControlInstance build_experiment_instance(const SocFile& s) {
  if (s.num_candidates < 4) throw InvalidInput("experiment instances need at least 4 candidates");
  ExperimentSplit split = experiment_split(s.num_candidates);
  ControlInstance inst;
  inst.rule = Rule::kemeny;
  inst.kind = ControlKind::ccac;
  inst.election = s.election();
  for (int c = split.registered; c < s.num_candidates; ++c) inst.unregistered.push_back(c);
  inst.limit = split.limit;
  inst.preferred = 0;
  validate(inst);
  return inst;
}

std::string to_string(RowOutcome o) {
  switch (o) {
    case RowOutcome::solved:
      return "solved";
    case RowOutcome::timeout:
      return "timeout";
    case RowOutcome::oom:
      return "oom";
    case RowOutcome::skipped:
      return "skipped";
    case RowOutcome::error:
      return "error";
  }
  return "?";
}

namespace {

ExperimentRow run_one(const std::string& path, const ExperimentOptions& opt) {
  ExperimentRow row;
  row.id = soc_instance_id(path);
  try {
    SocFile s = read_soc_file(path);
    row.voters = s.total_voters();
    if (s.num_candidates < 4) {
      row.outcome = RowOutcome::skipped;
      row.note = "fewer than 4 candidates";
      return row;
    }
    ControlInstance inst = build_experiment_instance(s);
    ExperimentSplit split = experiment_split(s.num_candidates);
    row.registered = split.registered;
    row.unregistered = split.unregistered;
    if (opt.use_solver) {
      row.method = "asp";
      AspArtifact art = make_artifact(facts_from_ccac(inst));
      std::string dir = opt.work_dir.empty() ? std::filesystem::temp_directory_path().string() : opt.work_dir;
      write_artifact(art, dir + "/" + row.id + ".lp");
      AspRun run = run_external(art, opt.solver);
      row.seconds = run.elapsed_seconds;
      switch (run.outcome) {
        case AspOutcome::sat:
        case AspOutcome::unsat:
          row.outcome = RowOutcome::solved;
          row.decision = run.outcome == AspOutcome::sat;
          break;
        case AspOutcome::timeout:
          row.outcome = RowOutcome::timeout;
          break;
        case AspOutcome::oom:
          row.outcome = RowOutcome::oom;
          break;
        case AspOutcome::solver_error:
          row.outcome = RowOutcome::error;
          row.note = "solver exit status " + std::to_string(run.exit_status);
          break;
      }
      return row;
    }
    row.method = "brute";
    if (s.num_candidates > opt.brute_max_candidates) {
      row.outcome = RowOutcome::skipped;
      row.note = "over the brute-force candidate cap";
      return row;
    }
    ControlOutcome out = solve_control(inst, opt.limits);
    row.seconds = out.elapsed_seconds;
    row.decision = out.decision;
    row.outcome = RowOutcome::solved;
  } catch (const ResourceLimit& e) {
    row.outcome = RowOutcome::skipped;
    row.note = e.what();
  } catch (const std::exception& e) {
    row.outcome = RowOutcome::error;
    row.note = e.what();
  }
  return row;
}

}  // namespace

ExperimentReport run_experiment(const std::string& dir, const ExperimentOptions& options) {
  if (!std::filesystem::is_directory(dir)) throw InvalidInput("not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".soc") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  ExperimentReport rep;
  for (const auto& f : files) {
    ExperimentRow row = run_one(f, options);
    switch (row.outcome) {
      case RowOutcome::solved:
        ++rep.solved;
        break;
      case RowOutcome::timeout:
        ++rep.timeouts;
        break;
      case RowOutcome::oom:
        ++rep.oom;
        break;
      case RowOutcome::skipped:
        ++rep.skipped;
        break;
      case RowOutcome::error:
        ++rep.errors;
        break;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace {

std::string decision_text(const ExperimentRow& r) {
  if (!r.decision) return "-";
  return *r.decision ? "Yes" : "No";
}

}  // namespace

std::string format_table(const ExperimentReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "Instance" << std::right << std::setw(6) << "#Reg" << std::setw(8) << "#Unreg"
     << std::setw(9) << "#Voters" << std::setw(11) << "Seconds" << std::setw(10) << "Possible" << "  Outcome\n";
  for (const auto& row : r.rows) {
    os << std::left << std::setw(16) << row.id << std::right << std::setw(6) << row.registered << std::setw(8)
       << row.unregistered << std::setw(9) << row.voters << std::setw(11) << std::fixed << std::setprecision(3)
       << row.seconds << std::setw(10) << decision_text(row) << "  " << to_string(row.outcome);
    if (!row.method.empty()) os << " (" << row.method << ")";
    if (!row.note.empty()) os << ": " << row.note;
    os << '\n';
  }
  os << "solved " << r.solved << ", timeout " << r.timeouts << ", oom " << r.oom << ", skipped " << r.skipped
     << ", error " << r.errors << '\n';
  return os.str();
}

std::string format_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "instance,registered,unregistered,voters,seconds,control_possible,outcome,method\n";
  for (const auto& row : r.rows) {
    os << row.id << ',' << row.registered << ',' << row.unregistered << ',' << row.voters << ',' << std::fixed
       << std::setprecision(3) << row.seconds << ',' << decision_text(row) << ',' << to_string(row.outcome) << ','
       << row.method << '\n';
  }
  return os.str();
}

}  // namespace hardctl
