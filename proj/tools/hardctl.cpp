// Command-line front end. Decisions go to stdout; the exit code only says
// whether the command ran: 0 done, 1 usage or input error, 2 resource
// limit, 3 internal invariant violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hardctl/asp.hpp"
#include "hardctl/chains.hpp"
#include "hardctl/control.hpp"
#include "hardctl/error.hpp"
#include "hardctl/generate.hpp"
#include "hardctl/kemeny.hpp"
#include "hardctl/preflib.hpp"
#include "hardctl/reductions.hpp"

using namespace hardctl;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw InvalidInput("cannot write " + path);
}

std::string ids(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s.empty() ? "-" : s;
}

std::string comment_lines(const std::string& text) {
  std::istringstream is(text);
  std::string line, out;
  while (std::getline(is, line)) out += "# " + line + '\n';
  return out;
}

// ------------------------------------------------------------- score

std::vector<std::int64_t> rule_scores(const Election& e, Rule rule) {
  std::vector<std::int64_t> out;
  const int m = e.num_candidates();
  switch (rule) {
    case Rule::kemeny:
    case Rule::kemeny_prime: {
      if (rule == Rule::kemeny && e.has_partial_votes()) throw InvalidInput("partial votes need kemeny_prime");
      LinearOrdering lo(m);
      std::int64_t base = kemeny_ordering(PairwiseMatrix(e), lo);
      for (Candidate c = 0; c < m; ++c) out.push_back(base + lo.optimum_with_first(c, lo.all()));
      break;
    }
    case Rule::young:
      for (Candidate c = 0; c < m; ++c) out.push_back(young_score(e, c).score);
      break;
    case Rule::dodgson:
      for (Candidate c = 0; c < m; ++c) out.push_back(dodgson_score(e, c).score);
      break;
  }
  return out;
}

int cmd_score(const std::string& rule_name, const std::string& path, int candidate) {
  Rule rule = rule_from_string(rule_name);
  Election e = parse_election(read_file(path));
  if (candidate > e.num_candidates()) throw InvalidInput("candidate out of range");
  auto scores = rule_scores(e, rule);
  std::cout << "rule: " << to_string(rule) << '\n';
  std::cout << (rule == Rule::young ? "# higher is better\n" : "# lower is better\n");
  for (Candidate c = 0; c < e.num_candidates(); ++c) {
    if (candidate > 0 && c != candidate - 1) continue;
    std::cout << "score " << c + 1 << " (" << e.name(c) << "): " << scores[c] << '\n';
  }
  return 0;
}

int cmd_winners(const std::string& rule_name, const std::string& path) {
  Rule rule = rule_from_string(rule_name);
  Election e = parse_election(read_file(path));
  auto w = winners(e, rule);
  std::cout << "rule: " << to_string(rule) << '\n';
  std::cout << "winners: " << ids(w) << '\n';
  for (Candidate c : w) std::cout << "winner " << c + 1 << " (" << e.name(c) << ")\n";
  if (rule == Rule::kemeny || rule == Rule::kemeny_prime) {
    auto r = kemeny_winners(e, rule == Rule::kemeny ? KemenyVariant::kemeny : KemenyVariant::kemeny_prime);
    std::cout << "kemeny score: " << r.score << '\n' << "consensus: " << ids(r.consensus) << '\n';
  }
  return 0;
}

// ----------------------------------------------------------- control

struct ControlOverrides {
  std::string rule, type;
  int limit = -1, preferred = 0;
};

int cmd_control(const std::string& path, const ControlOverrides& o) {
  ControlInstance inst = parse_control(read_file(path));
  if (!o.rule.empty()) inst.rule = rule_from_string(o.rule);
  if (!o.type.empty()) inst.kind = control_kind_from_string(o.type);
  if (o.limit >= 0) inst.limit = o.limit;
  if (o.preferred > 0) inst.preferred = o.preferred - 1;
  ControlOutcome out = solve_control(inst);
  std::cout << "rule: " << to_string(inst.rule) << '\n' << "kind: " << to_string(inst.kind) << '\n';
  std::cout << "limit: " << inst.limit << '\n' << "preferred: " << inst.preferred + 1 << '\n';
  std::cout << "control possible: " << (out.decision ? "yes" : "no") << '\n';
  if (out.decision) {
    bool voters = inst.kind == ControlKind::ccav || inst.kind == ControlKind::ccdv;
    std::cout << (voters ? "witness voters: " : "witness candidates: ") << ids(out.witness) << '\n';
  }
  std::cout << "subsets examined: " << out.subsets_examined << '\n';
  std::cout << "seconds: " << out.elapsed_seconds << '\n';
  return 0;
}

// ------------------------------------------------------------ reduce

const std::vector<std::string> kReductions = {
    "karp-vc",          "qsat2-vcms",          "qsat2-vcma",         "vcms-fasms",
    "vcma-fasma",       "vcma-fasmaa",         "fasms-kemeny-ccdcstar", "fasma-kemeny-ccac",
    "fasmaa-kemeny-prime-ccav", "gnd-vcms",    "gnd-ismd",           "ismd-young-ccdv",
    "dwork",            "mcgarvey",            "sat3-dodgson-score", "qsat2-dodgson-ccdcstar",
    "qsat2-dodgson-ccac", "young-pad"};

std::string reduce(const std::string& type, const std::string& text) {
  auto graph_out = [](const GraphReduction& r) {
    return comment_lines(format_trace(r.trace)) + format_graph_control(r.instance);
  };
  auto election_out = [](const ElectionReduction& r) {
    return comment_lines(format_trace(r.trace)) + format_control(r.instance);
  };
  auto gc = [&] { return parse_graph_control(text); };
  if (type == "karp-vc") {
    auto k = karp_3sat_to_vc(parse_cnf3(text));
    return comment_lines(format_trace(k.trace)) + "c target " + std::to_string(k.target) + '\n' +
           format_graph(k.graph);
  }
  if (type == "qsat2-vcms") return graph_out(qsat2_to_vcms(parse_qbf2(text)));
  if (type == "qsat2-vcma") return graph_out(qsat2_to_vcma(parse_qbf2(text)));
  if (type == "vcms-fasms") return graph_out(vcms_to_fasms(gc()));
  if (type == "vcma-fasma") return graph_out(vcma_to_fasma(gc()));
  if (type == "vcma-fasmaa") return graph_out(vcma_to_fasmaa(gc()));
  if (type == "gnd-vcms") return graph_out(gnd_to_vcms(gc()));
  if (type == "gnd-ismd") return graph_out(gnd_to_ismd(gc()));
  if (type == "fasms-kemeny-ccdcstar") return election_out(fasms_to_kemeny_ccdcstar(gc()));
  if (type == "fasma-kemeny-ccac") return election_out(fasma_to_kemeny_ccac(gc()));
  if (type == "fasmaa-kemeny-prime-ccav") return election_out(fasmaa_to_kemeny_prime_ccav(gc()));
  if (type == "dwork") return format_digraph(dwork_hat(parse_digraph(text)));
  if (type == "mcgarvey") return format_election(mcgarvey(parse_digraph(text)));
  if (type == "young-pad") {
    auto src = gc();
    return format_graph(pad_for_young(src.graph, src.limit));
  }
  if (type == "ismd-young-ccdv") {
    auto src = gc();
    if (src.kind != GraphControlKind::ismd) throw InvalidInput("expected an ismd instance");
    auto img = ismd_to_young_ccdv(src.graph, src.limit, src.target);
    return comment_lines(format_trace(img.trace)) + format_control(img.instance);
  }
  if (type == "sat3-dodgson-score") {
    auto img = sat3_to_dodgson_score(parse_cnf3(text));
    return comment_lines(format_trace(img.trace)) + "# q " + std::to_string(img.q + 1) + " budget " +
           std::to_string(img.budget) + '\n' + format_election(img.election);
  }
  if (type == "qsat2-dodgson-ccdcstar" || type == "qsat2-dodgson-ccac") {
    Qbf2 f = parse_qbf2(text);
    auto img = type == "qsat2-dodgson-ccac" ? qsat2_to_dodgson_ccac(f) : qsat2_to_dodgson_ccdcstar(f);
    return comment_lines(format_trace(img.trace)) + format_control(img.instance);
  }
  throw InvalidInput("unknown reduction '" + type + "'");
}

// -------------------------------------------------------------- chain

int cmd_verify_chain(const std::string& chain, int exhaustive_n, int trials, std::uint64_t seed) {
  ChainReport rep = exhaustive_n > 0 ? verify_chain_exhaustive(chain, exhaustive_n)
                                     : verify_chain_random(chain, trials, seed);
  std::cout << format_chain_report(rep);
  if (!rep.disagreements.empty()) throw InvariantViolation("reduction chain disagreement");
  return 0;
}

// ---------------------------------------------------------------- asp

SolverConfig solver_config(const std::string& bin, double time_limit, std::size_t mem_limit) {
  return {resolve_solver(bin), time_limit, mem_limit};
}

ControlInstance load_ccac(const std::string& path) {
  std::string text = read_file(path);
  // SOC files become experiment instances; anything else is a control file
  if (path.size() > 4 && path.substr(path.size() - 4) == ".soc") {
    return build_experiment_instance(parse_soc(text, soc_instance_id(path)));
  }
  return parse_control(text);
}

int cmd_asp_emit(const std::string& path, const std::string& out, bool facts_only) {
  if (path.empty()) {
    write_out(out, emit_program());
    return 0;
  }
  AspArtifact art = make_artifact(facts_from_ccac(load_ccac(path)));
  write_out(out, facts_only ? art.fact_text : art.program_text + "\n% ---- instance\n" + art.fact_text);
  return 0;
}

int cmd_asp_solve(const std::string& path, const SolverConfig& cfg, bool cross) {
  ControlInstance inst = load_ccac(path);
  if (cross) {
    std::cout << format_report(cross_check(inst, cfg)) << "decisions agree\n";
    return 0;
  }
  AspArtifact art = make_artifact(facts_from_ccac(inst));
  write_artifact(art, (std::filesystem::temp_directory_path() / "hardctl-solve.lp").string());
  AspRun run = run_external(art, cfg);
  std::filesystem::remove(art.path);
  std::cout << "outcome: " << to_string(run.outcome) << '\n';
  if (run.outcome == AspOutcome::sat || run.outcome == AspOutcome::unsat) {
    std::cout << "control possible: " << (run.outcome == AspOutcome::sat ? "yes" : "no") << '\n';
  }
  std::cout << "seconds: " << run.elapsed_seconds << '\n';
  if (run.outcome == AspOutcome::timeout || run.outcome == AspOutcome::oom) {
    throw ResourceLimit("solver " + to_string(run.outcome));
  }
  if (run.outcome == AspOutcome::solver_error) throw ConfigError("solver failed:\n" + run.output);
  return 0;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  std::string type;
  std::uint64_t seed = 1;
  int candidates = 5, voters = 7, vertices = 6, clauses = 3, vars = 2, limit = 1, unregistered = 2;
  int percent = 50;
};

std::string generate(const GenOptions& o) {
  Rng rng(o.seed);
  if (o.type == "election") return format_election(random_election(o.candidates, o.voters, rng));
  if (o.type == "graph") return format_graph(random_graph(o.vertices, o.percent, rng));
  if (o.type == "digraph") return format_digraph(random_digraph(o.vertices, o.percent, rng));
  if (o.type == "cnf3") return format_cnf3(random_cnf3(o.vars, o.clauses, rng));
  if (o.type == "qbf2") return format_qbf2(random_qbf2(o.vars, o.clauses, rng));
  if (o.type == "ccac") {
    return format_control(random_ccac(o.candidates, o.unregistered, o.voters, o.limit, rng));
  }
  return format_graph_control(random_graph_control(graph_control_kind_from_string(o.type), o.vertices, o.limit, rng));
}

int run(int argc, char** argv) {
  CLI::App app{"Exact winner, control and reduction tools for Kemeny, Young and Dodgson elections"};
  app.require_subcommand(1);

  std::string rule, election, instance, type, chain, solver_bin, dir, out, csv;
  int candidate = 0, exhaustive_n = 0, trials = 100, max_candidates = 16;
  std::uint64_t seed = 1;
  double time_limit = 3600;
  std::size_t mem_limit = 16384;
  bool facts_only = false, cross = false;
  ControlOverrides over;
  GenOptions gen;

  auto* score = app.add_subcommand("score", "Score every candidate under a rule");
  score->add_option("--rule", rule, "kemeny, kemeny_prime, young or dodgson")->required();
  score->add_option("--election", election, "Election file")->required();
  score->add_option("--candidate", candidate, "Only this candidate (1-based)");

  auto* win = app.add_subcommand("winners", "Winner set under a rule");
  win->add_option("--rule", rule)->required();
  win->add_option("--election", election)->required();

  auto* control = app.add_subcommand("control", "Decide a constructive control instance by search");
  control->add_option("--instance", instance, "Control instance file")->required();
  control->add_option("--rule", over.rule, "Override the rule");
  control->add_option("--type", over.type, "Override the control kind");
  control->add_option("--limit", over.limit, "Override the limit");
  control->add_option("--preferred", over.preferred, "Override the preferred candidate (1-based)");

  auto* red = app.add_subcommand("reduce", "Apply one reduction and print the image");
  red->add_option("--type", type, "Reduction name")->required()->check(CLI::IsMember(kReductions));
  red->add_option("--instance", instance, "Source instance file")->required();
  red->add_option("--out", out, "Output file (default stdout)");

  auto* chk = app.add_subcommand("verify-chain", "Check that decisions agree along a reduction chain");
  chk->add_option("--chain", chain)->required()->check(CLI::IsMember(chain_names()));
  chk->add_option("--exhaustive-n", exhaustive_n, "Enumerate all sources of this size");
  chk->add_option("--trials", trials, "Random sources when not exhaustive");
  chk->add_option("--seed", seed);

  auto* emit = app.add_subcommand("asp-emit", "Print the Kemeny-CCAC logic program and instance facts");
  emit->add_option("--instance", instance, "Kemeny CCAC control file or .soc file (omit for the rules only)");
  emit->add_option("--out", out);
  emit->add_flag("--facts-only", facts_only);

  auto* solve = app.add_subcommand("asp-solve", "Solve a Kemeny CCAC instance with an external ASP solver");
  solve->add_option("--instance", instance)->required();
  solve->add_option("--solver-bin", solver_bin, std::string("Solver binary (default $") + kSolverEnv + ")");
  solve->add_option("--time-limit", time_limit, "Seconds");
  solve->add_option("--mem-limit", mem_limit, "Megabytes");
  solve->add_flag("--cross-check", cross, "Also solve by search and compare");

  auto* exp = app.add_subcommand("preflib-experiment", "Run the CCAC experiment over a directory of .soc files");
  exp->add_option("--dir", dir)->required();
  exp->add_option("--solver-bin", solver_bin);
  exp->add_option("--time-limit", time_limit);
  exp->add_option("--mem-limit", mem_limit);
  exp->add_option("--max-candidates", max_candidates, "Search-based decisions up to this many candidates");
  exp->add_option("--csv", csv, "Also write delimited rows here");

  auto* g = app.add_subcommand("gen", "Print a seeded random instance");
  g->add_option("--type", gen.type,
                "election, graph, digraph, cnf3, qbf2, ccac, vcms, vcma, ismd, fasms, fasma, fasmaa, gnd")
      ->required();
  g->add_option("--seed", gen.seed);
  g->add_option("--candidates", gen.candidates);
  g->add_option("--unregistered", gen.unregistered);
  g->add_option("--voters", gen.voters);
  g->add_option("--vertices", gen.vertices);
  g->add_option("--percent", gen.percent, "Edge probability in percent");
  g->add_option("--vars", gen.vars);
  g->add_option("--clauses", gen.clauses);
  g->add_option("--limit", gen.limit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*score) return cmd_score(rule, election, candidate);
  if (*win) return cmd_winners(rule, election);
  if (*control) return cmd_control(instance, over);
  if (*red) {
    write_out(out, reduce(type, read_file(instance)));
    return 0;
  }
  if (*chk) return cmd_verify_chain(chain, exhaustive_n, trials, seed);
  if (*emit) return cmd_asp_emit(instance, out, facts_only);
  if (*solve) return cmd_asp_solve(instance, solver_config(solver_bin, time_limit, mem_limit), cross);
  if (*exp) {
    ExperimentOptions opt;
    opt.brute_max_candidates = max_candidates;
    if (!solver_bin.empty() || solver_configured()) {
      opt.use_solver = true;
      opt.solver = solver_config(solver_bin, time_limit, mem_limit);
    }
    ExperimentReport rep = run_experiment(dir, opt);
    std::cout << format_table(rep);
    if (!csv.empty()) write_out(csv, format_csv(rep));
    return 0;
  }
  if (*g) {
    std::cout << generate(gen);
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
