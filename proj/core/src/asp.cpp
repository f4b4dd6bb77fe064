#include "hardctl/asp.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "hardctl/error.hpp"
#include "text_util.hpp"

namespace hardctl {

int FactBase::voternum() const {
  int total = 0;
  for (int c : counts) total += c;
  return total;
}

FactBase facts_from_ccac(const ControlInstance& inst, std::vector<int>* asp_ids) {
  if (inst.rule != Rule::kemeny || inst.kind != ControlKind::ccac) {
    throw InvalidInput("facts are defined for Kemeny CCAC instances only");
  }
  validate(inst);
  const Election& e = inst.election;
  if (e.has_partial_votes()) throw InvalidInput("the encoding needs complete votes");
  const int m = e.num_candidates();
  std::vector<int> id(m, 0);
  std::vector<Candidate> unreg = inst.unregistered;
  std::sort(unreg.begin(), unreg.end());
  int next = 1;
  for (Candidate c = 0; c < m; ++c) {
    if (!std::binary_search(unreg.begin(), unreg.end(), c)) id[c] = next++;
  }
  for (Candidate c : unreg) id[c] = next++;

  FactBase fb;
  fb.rcandnum = m - static_cast<int>(unreg.size());
  fb.ucandnum = static_cast<int>(unreg.size());
  fb.limit = inst.limit;
  fb.preferred = id[inst.preferred];
  std::map<std::vector<int>, std::size_t> seen;
  for (const Vote& v : e.votes()) {
    std::vector<int> r;
    for (Candidate c : v.ranking) r.push_back(id[c]);
    auto [it, fresh] = seen.emplace(r, fb.prefs.size());
    if (fresh) {
      fb.prefs.push_back(std::move(r));
      fb.counts.push_back(v.count);
    } else {
      fb.counts[it->second] += v.count;
    }
  }
  if (asp_ids) *asp_ids = std::move(id);
  return fb;
}

ControlInstance control_from_facts(const FactBase& fb) {
  const int m = fb.rcandnum + fb.ucandnum;
  std::vector<Vote> votes;
  for (std::size_t i = 0; i < fb.prefs.size(); ++i) {
    Ranking r;
    for (int c : fb.prefs[i]) r.push_back(c - 1);
    votes.push_back({fb.counts[i], std::move(r), false});
  }
  ControlInstance inst;
  inst.rule = Rule::kemeny;
  inst.kind = ControlKind::ccac;
  inst.election = Election(m, std::move(votes));
  for (int c = fb.rcandnum; c < m; ++c) inst.unregistered.push_back(c);
  inst.limit = fb.limit;
  inst.preferred = fb.preferred - 1;
  validate(inst);
  return inst;
}

std::string format_facts(const FactBase& fb) {
  std::ostringstream os;
  os << "prefnum(" << fb.prefnum() << ").\n";
  os << "rcandnum(" << fb.rcandnum << ").\n";
  os << "ucandnum(" << fb.ucandnum << ").\n";
  os << "limit(" << fb.limit << ").\n";
  os << "preferredCand(" << fb.preferred << ").\n";
  os << "voternum(" << fb.voternum() << ").\n";
  for (std::size_t i = 0; i < fb.prefs.size(); ++i) {
    os << "votecount(" << i + 1 << "," << fb.counts[i] << ").\n";
    for (std::size_t j = 0; j < fb.prefs[i].size(); ++j) {
      os << "p(" << i + 1 << "," << j + 1 << "," << fb.prefs[i][j] << ").\n";
    }
  }
  return os.str();
}

FactBase parse_facts(std::string_view text) {
  FactBase fb;
  int prefnum = -1, voternum = -1;
  std::map<int, std::map<int, int>> p;
  std::map<int, int> counts;
  int line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto line = detail::trim(raw);
    if (line.empty() || line.front() == '%') continue;
    auto open = line.find('(');
    if (open == std::string_view::npos || line.size() < open + 3 || line.substr(line.size() - 2) != ").") {
      throw ParseError(line_no, "expected a fact 'name(args).'");
    }
    auto name = line.substr(0, open);
    std::vector<int> args;
    for (auto a : detail::split(line.substr(open + 1, line.size() - open - 3), ',')) {
      args.push_back(static_cast<int>(detail::to_int(a, line_no)));
    }
    auto want = [&](std::size_t k) {
      if (args.size() != k) throw ParseError(line_no, "wrong arity for " + std::string(name));
    };
    if (name == "prefnum") {
      want(1);
      prefnum = args[0];
    } else if (name == "rcandnum") {
      want(1);
      fb.rcandnum = args[0];
    } else if (name == "ucandnum") {
      want(1);
      fb.ucandnum = args[0];
    } else if (name == "limit") {
      want(1);
      fb.limit = args[0];
    } else if (name == "preferredCand") {
      want(1);
      fb.preferred = args[0];
    } else if (name == "voternum") {
      want(1);
      voternum = args[0];
    } else if (name == "votecount") {
      want(2);
      counts[args[0]] = args[1];
    } else if (name == "p") {
      want(3);
      if (!p[args[0]].emplace(args[1], args[2]).second) throw ParseError(line_no, "position given twice");
    } else {
      throw ParseError(line_no, "unknown predicate " + std::string(name));
    }
  }
  if (prefnum < 0) throw ParseError(line_no, "missing prefnum");
  const int m = fb.rcandnum + fb.ucandnum;
  for (int i = 1; i <= prefnum; ++i) {
    auto& pos = p[i];
    std::vector<int> r;
    for (int j = 1; j <= m; ++j) {
      auto it = pos.find(j);
      if (it == pos.end()) throw ParseError(line_no, "vote " + std::to_string(i) + " misses a position");
      r.push_back(it->second);
    }
    if (static_cast<int>(pos.size()) != m || !counts.count(i)) {
      throw ParseError(line_no, "vote " + std::to_string(i) + " is malformed");
    }
    fb.prefs.push_back(std::move(r));
    fb.counts.push_back(counts[i]);
  }
  if (static_cast<int>(p.size()) > prefnum || static_cast<int>(counts.size()) != prefnum) {
    throw ParseError(line_no, "vote numbering disagrees with prefnum");
  }
  if (voternum >= 0 && voternum != fb.voternum()) throw ParseError(line_no, "voternum disagrees with votecounts");
  try {
    control_from_facts(fb);
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ParseError(line_no, e.what());
  }
  return fb;
}

const std::string& emit_program() {
  static const std::string program = R"(% Kemeny-CCAC: guess / check / saturate.
% Primed predicates are spelled with a trailing p (gpref' is gprefp,
% ungpref' is ungprefp, countTo' is countTop, rank' is rankp, gwrankC' is
% gwrankCp).
% Aggregates follow the Clingo 4 semantics.

% ---- guess
preference(1..P) :- prefnum(P).
% Registered candidates.
candidate(1..C) :- rcandnum(C).
% Unregistered candidates.
ucandidate((M+1)..(M+N)) :- rcandnum(M), ucandnum(N).
% Guess a subset of at most K candidates to add.
{ candidate(C) : ucandidate(C) } K :- limit(K).
candnum(N) :- N = #count{ candidate(C) : candidate(C) }.
% Number of times candidate C is ranked below D.
wrank(P,C,D) :- p(P,X,C), p(P,Y,D), Y < X.
wrankC(C,D,N) :- candidate(C), candidate(D), N = #sum{ VC,P : votecount(P,VC), wrank(P,C,D) }.
position(1..M) :- candnum(M).
% Guess a consensus.
gpref(X,C) | ungpref(X,C) :- position(X), candidate(C).
:- gpref(X,C), gpref(Y,C), X != Y.
:- gpref(X,C), gpref(X,D), D != C.
:- gpref(X,C), ungpref(X,C).
% Loop checks if all possible positions for a given cand. are in ungpref.
npos(X,Y) :- position(X), Y = X+1.
countTo(C,1) :- ungpref(1,C).
countTo(C,X) :- countTo(C,Y), npos(Y,X), ungpref(X,C).
:- countTo(C,X), candidate(C), candnum(X).
% In the guessed consensus C > D.
rank(C,D) :- gpref(X,C), gpref(Y,D), X < Y.
% Number of votes that disagree on C and D.
gwrankC(C,D,N) :- rank(C,D), wrankC(C,D,N).
:- preferredCand(X), gpref(Y,X), position(Y), Y != 1.

% ---- check
% Guess another consensus.
gprefp(X,C) | ungprefp(X,C) :- position(X), candidate(C).
sat :- gprefp(X,C), gprefp(Y,C), X != Y.
sat :- gprefp(X,C), gprefp(X,D), D != C.
% Loop checks if all possible positions for a given cand. are in ungprefp.
sat :- gprefp(X,C), ungprefp(X,C).
countTop(C,1) :- ungprefp(1,C).
countTop(C,X) :- countTop(C,Y), npos(Y,X), ungprefp(X,C).
% Saturate if all possible positions for a given candidate are in ungprefp,
% which means a candidate is not ranked in the guess.
sat :- countTop(C,X), candidate(C), candnum(X).
% In the guessed consensus C > D.
rankp(C,D) :- gprefp(X,C), gprefp(Y,D), X < Y.
% Number of votes that disagree on C and D.
gwrankCp(C,D,N) :- rankp(C,D), wrankC(C,D,N).
sat :- #sum{ M,C1,C2,pos : gwrankCp(C1,C2,M); -N,D1,D2,neg : gwrankC(D1,D2,N) } >= 0.
sat :- preferredCand(X), gprefp(1,X).

% ---- saturate
gprefp(X,C) :- position(X), candidate(C), sat.
ungprefp(X,C) :- position(X), candidate(C), sat.
possibleCount(0..X) :- voternum(X).
gwrankCp(C,D,N) :- candidate(C), candidate(D), possibleCount(N), sat.
rankp(C,D) :- candidate(C), candidate(D), sat.
countTop(C,N) :- candidate(C), position(N), sat.
:- not sat.
)";
  return program;
}

AspArtifact make_artifact(const FactBase& facts) { return {emit_program(), format_facts(facts), {}}; }

void write_artifact(AspArtifact& artifact, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path);
  out << artifact.program_text << "\n% ---- instance\n" << artifact.fact_text;
  if (!out.flush()) throw ConfigError("cannot write " + path);
  artifact.path = path;
}

std::string to_string(AspOutcome o) {
  switch (o) {
    case AspOutcome::sat:
      return "sat";
    case AspOutcome::unsat:
      return "unsat";
    case AspOutcome::timeout:
      return "timeout";
    case AspOutcome::oom:
      return "oom";
    case AspOutcome::solver_error:
      return "solver_error";
  }
  return "?";
}

std::string resolve_solver(const std::string& explicit_path) {
  std::string path = explicit_path;
  if (path.empty()) {
    const char* env = std::getenv(kSolverEnv);
    if (env) path = env;
  }
  if (path.empty()) throw ConfigError(std::string("no ASP solver configured (set ") + kSolverEnv + ")");
  if (::access(path.c_str(), X_OK) != 0) throw ConfigError("ASP solver '" + path + "' is not executable");
  return path;
}

bool solver_configured() {
  try {
    resolve_solver();
    return true;
  } catch (const ConfigError&) {
    return false;
  }
}

namespace {

bool contains_token(const std::string& out, const char* tok) {
  // whole-line match, so UNSATISFIABLE never reads as SATISFIABLE
  std::istringstream is(out);
  std::string line;
  while (std::getline(is, line)) {
    if (detail::trim(line) == tok) return true;
  }
  return false;
}

std::vector<int> added_candidates(const std::string& out) {
  // first answer line after "Answer: 1"
  std::istringstream is(out);
  std::string line;
  std::vector<int> ids;
  bool next = false;
  while (std::getline(is, line)) {
    if (next) {
      for (auto tok : detail::split_ws(line)) {
        if (detail::starts_with(tok, "candidate(") && tok.back() == ')') {
          ids.push_back(static_cast<int>(detail::to_int(tok.substr(10, tok.size() - 11), 0)));
        }
      }
      break;
    }
    next = detail::starts_with(line, "Answer:");
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

AspRun run_external(const AspArtifact& artifact, const SolverConfig& config) {
  if (artifact.path.empty()) throw ConfigError("artifact has not been written to disk");
  std::string solver = resolve_solver(config.solver_path);

  char out_name[] = "/tmp/hardctl-asp-XXXXXX";
  int out_fd = ::mkstemp(out_name);
  if (out_fd < 0) throw ConfigError("cannot create solver output file");
  ::unlink(out_name);

  auto start = std::chrono::steady_clock::now();
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(out_fd);
    throw ConfigError(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    if (config.mem_limit_mb > 0) {
      rlimit rl{};
      rl.rlim_cur = rl.rlim_max = static_cast<rlim_t>(config.mem_limit_mb) * 1024 * 1024;
      ::setrlimit(RLIMIT_AS, &rl);
    }
    ::dup2(out_fd, STDOUT_FILENO);
    ::dup2(out_fd, STDERR_FILENO);
    ::execl(solver.c_str(), solver.c_str(), artifact.path.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);

  AspRun run;
  int status = 0;
  bool timed_out = false;
  while (true) {
    pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) break;
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!timed_out && elapsed > config.time_limit_seconds) {
      timed_out = true;
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  run.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  run.exit_status = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);

  ::lseek(out_fd, 0, SEEK_SET);
  char buf[4096];
  ssize_t got;
  while ((got = ::read(out_fd, buf, sizeof buf)) > 0) run.output.append(buf, static_cast<std::size_t>(got));
  ::close(out_fd);

  if (timed_out) {
    run.outcome = AspOutcome::timeout;
  } else if (contains_token(run.output, "UNSATISFIABLE")) {
    run.outcome = AspOutcome::unsat;
  } else if (contains_token(run.output, "SATISFIABLE")) {
    run.outcome = AspOutcome::sat;
    run.added = added_candidates(run.output);
  } else if (run.output.find("bad_alloc") != std::string::npos ||
             run.output.find("MemoryError") != std::string::npos ||
             run.output.find("out of memory") != std::string::npos) {
    run.outcome = AspOutcome::oom;
  } else if (contains_token(run.output, "UNKNOWN")) {
    run.outcome = AspOutcome::timeout;
  } else {
    run.outcome = AspOutcome::solver_error;
  }
  return run;
}

std::string format_report(const CrossCheckReport& r) {
  auto ids = [](const std::vector<Candidate>& cs) {
    std::string s = "{";
    for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? "," : "") + std::to_string(cs[i] + 1);
    return s + "}";
  };
  std::ostringstream os;
  os << "asp: " << (r.asp_decision ? "yes" : "no") << " " << ids(r.asp_witness) << " in " << r.asp_seconds
     << "s\n";
  os << "brute force: " << (r.brute_decision ? "yes" : "no") << " " << ids(r.brute_witness) << " in "
     << r.brute_seconds << "s\n";
  return os.str();
}

CrossCheckReport cross_check(const ControlInstance& inst, const SolverConfig& config, const ControlLimits& limits,
                             const std::string& work_dir) {
  std::vector<int> ids;
  FactBase fb = facts_from_ccac(inst, &ids);
  AspArtifact art = make_artifact(fb);
  std::string dir = work_dir.empty() ? std::filesystem::temp_directory_path().string() : work_dir;
  std::string path = dir + "/hardctl-cross-" + std::to_string(::getpid()) + ".lp";
  write_artifact(art, path);

  CrossCheckReport rep;
  AspRun run = run_external(art, config);
  std::filesystem::remove(path);
  if (run.outcome == AspOutcome::timeout || run.outcome == AspOutcome::oom) {
    throw ResourceLimit("ASP solver " + to_string(run.outcome));
  }
  if (run.outcome == AspOutcome::solver_error) {
    throw ConfigError("ASP solver failed (status " + std::to_string(run.exit_status) + "): " + run.output);
  }
  rep.asp_decision = run.outcome == AspOutcome::sat;
  rep.asp_seconds = run.elapsed_seconds;
  for (int fid : run.added) {
    auto it = std::find(ids.begin(), ids.end(), fid);
    if (fid > fb.rcandnum && it != ids.end()) rep.asp_witness.push_back(static_cast<Candidate>(it - ids.begin()));
  }
  std::sort(rep.asp_witness.begin(), rep.asp_witness.end());

  ControlOutcome brute = solve_control(inst, limits);
  rep.brute_decision = brute.decision;
  rep.brute_witness = brute.witness;
  rep.brute_seconds = brute.elapsed_seconds;
  if (rep.asp_decision != rep.brute_decision) {
    throw InvariantViolation("ASP and brute-force decisions differ\n" + format_report(rep) + format_facts(fb));
  }
  if (rep.asp_decision) {
    auto ce = apply_action(inst, rep.asp_witness);
    if (static_cast<int>(rep.asp_witness.size()) > inst.limit ||
        !is_winner(ce.election, ce.preferred, Rule::kemeny, limits.rule)) {
      throw InvariantViolation("ASP answer set is not a valid control action\n" + format_report(rep));
    }
  }
  return rep;
}

}  // namespace hardctl
