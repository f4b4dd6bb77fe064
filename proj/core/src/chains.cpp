#include "hardctl/chains.hpp"

#include <algorithm>
#include <sstream>

#include "hardctl/control.hpp"
#include "hardctl/error.hpp"
#include "hardctl/generate.hpp"
#include "hardctl/reductions.hpp"

namespace hardctl {

namespace {

constexpr const char* kQbfChains[] = {"qsat2-kemeny-ccdcstar", "qsat2-kemeny-ccac", "qsat2-kemeny-prime-ccav"};
constexpr const char* kCnfChains[] = {"sat3-dodgson-score"};
constexpr const char* kGndChains[] = {"gnd-vcms", "gnd-ismd"};

template <std::size_t N>
bool one_of(std::string_view s, const char* const (&names)[N]) {
  return std::find(std::begin(names), std::end(names), s) != std::end(names);
}

[[noreturn]] void unknown(std::string_view chain, const char* source) {
  throw InvalidInput("chain '" + std::string(chain) + "' does not start from " + source);
}

}  // namespace

std::vector<std::string> chain_names() {
  std::vector<std::string> out;
  for (auto n : kQbfChains) out.emplace_back(n);
  for (auto n : kCnfChains) out.emplace_back(n);
  for (auto n : kGndChains) out.emplace_back(n);
  return out;
}

bool ChainRun::agree() const {
  return std::all_of(steps.begin(), steps.end(), [&](const ChainStep& s) { return s.decision == steps[0].decision; });
}

ChainRun run_chain(std::string_view chain, const Qbf2& f) {
  if (!one_of(chain, kQbfChains)) unknown(chain, "QSAT2");
  ChainRun run;
  run.source = format_qbf2(f);
  run.steps.push_back({"qsat2", qsat2_decide(f).has_value()});
  auto graph = [&](const char* name, const GraphControlInstance& g) {
    run.steps.push_back({name, decide_graph_control(g).decision});
  };
  auto election = [&](const char* name, const ControlInstance& c) {
    run.steps.push_back({name, solve_control(c).decision});
  };
  if (chain == "qsat2-kemeny-ccdcstar") {
    auto vcms = qsat2_to_vcms(f);
    auto fasms = vcms_to_fasms(vcms.instance);
    graph("vcms", vcms.instance);
    graph("fasms", fasms.instance);
    election("kemeny-ccdc*", fasms_to_kemeny_ccdcstar(fasms.instance).instance);
  } else {
    auto vcma = qsat2_to_vcma(f);
    graph("vcma", vcma.instance);
    if (chain == "qsat2-kemeny-ccac") {
      auto fasma = vcma_to_fasma(vcma.instance);
      graph("fasma", fasma.instance);
      election("kemeny-ccac", fasma_to_kemeny_ccac(fasma.instance).instance);
    } else {
      auto fasmaa = vcma_to_fasmaa(vcma.instance);
      graph("fasmaa", fasmaa.instance);
      election("kemeny'-ccav", fasmaa_to_kemeny_prime_ccav(fasmaa.instance).instance);
    }
  }
  return run;
}

ChainRun run_chain(std::string_view chain, const Cnf3& f) {
  if (!one_of(chain, kCnfChains)) unknown(chain, "3SAT");
  ChainRun run;
  run.source = format_cnf3(f);
  run.steps.push_back({"3sat", sat3_decide(f).has_value()});
  auto img = sat3_to_dodgson_score(f);
  run.steps.push_back({"dodgson-score", dodgson_within(img.election, img.q, img.budget).has_value()});
  return run;
}

ChainRun run_chain(std::string_view chain, const GraphControlInstance& gnd) {
  if (!one_of(chain, kGndChains)) unknown(chain, "generalized node deletion");
  ChainRun run;
  run.source = format_graph_control(gnd);
  run.steps.push_back({"gnd", decide_graph_control(gnd).decision});
  if (chain == "gnd-vcms") {
    run.steps.push_back({"vcms", decide_graph_control(gnd_to_vcms(gnd).instance).decision});
  } else {
    run.steps.push_back({"ismd", decide_graph_control(gnd_to_ismd(gnd).instance).decision});
  }
  return run;
}

namespace {

void record(ChainReport& rep, ChainRun run) {
  ++rep.instances;
  rep.yes += run.steps[0].decision;
  if (!run.agree()) rep.disagreements.push_back(std::move(run));
}

}  // namespace

ChainReport verify_chain_exhaustive(std::string_view chain, int n) {
  if (n < 1) throw InvalidInput("exhaustive size must be positive");
  ChainReport rep;
  rep.chain = std::string(chain);
  if (one_of(chain, kQbfChains)) {
    for (const auto& f : qbf2_patterns(n, 2)) record(rep, run_chain(chain, f));
  } else if (one_of(chain, kCnfChains)) {
    for (const auto& f : cnf3_patterns(n, 2)) record(rep, run_chain(chain, f));
  } else if (one_of(chain, kGndChains)) {
    if (n > 6) throw ResourceLimit("exhaustive graph enumeration is capped at 6 vertices");
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      Graph g(n);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1U) g.add_edge(pairs[i].first, pairs[i].second);
      }
      for (int k = 0; k <= std::min(2, n); ++k) {
        for (int ell = 1; ell <= 2; ++ell) record(rep, run_chain(chain, make_gnd(g, k, ell)));
      }
    }
  } else {
    throw InvalidInput("unknown chain '" + std::string(chain) + "'");
  }
  return rep;
}

ChainReport verify_chain_random(std::string_view chain, int trials, std::uint64_t seed) {
  Rng rng(seed);
  ChainReport rep;
  rep.chain = std::string(chain);
  for (int t = 0; t < trials; ++t) {
    if (one_of(chain, kQbfChains)) {
      record(rep, run_chain(chain, random_qbf2(1 + draw(rng, 2), 1 + draw(rng, 3), rng)));
    } else if (one_of(chain, kCnfChains)) {
      record(rep, run_chain(chain, random_cnf3(1 + draw(rng, 3), 1 + draw(rng, 3), rng)));
    } else if (one_of(chain, kGndChains)) {
      const int n = 2 + draw(rng, 5);
      record(rep, run_chain(chain, random_graph_control(GraphControlKind::gnd, n, draw(rng, 3), rng)));
    } else {
      throw InvalidInput("unknown chain '" + std::string(chain) + "'");
    }
  }
  return rep;
}

std::string format_chain_report(const ChainReport& r) {
  std::ostringstream os;
  os << "chain: " << r.chain << '\n';
  os << "instances: " << r.instances << " (" << r.yes << " yes)\n";
  os << "disagreements: " << r.disagreements.size() << '\n';
  for (const auto& run : r.disagreements) {
    os << "--\n" << run.source;
    for (const auto& s : run.steps) os << s.problem << ": " << (s.decision ? "yes" : "no") << '\n';
  }
  os << (r.disagreements.empty() ? "all sub-decisions agree" : "CHAIN BROKEN") << '\n';
  return os.str();
}

}  // namespace hardctl
