#include "hardctl/generate.hpp"

#include <algorithm>
#include <numeric>

#include "hardctl/error.hpp"
#include "hardctl/reductions.hpp"

namespace hardctl {

Ranking random_ranking(int m, Rng& rng) {
  Ranking r(m);
  std::iota(r.begin(), r.end(), 0);
  // Fisher-Yates with the portable draw()
  for (int i = m - 1; i > 0; --i) std::swap(r[i], r[draw(rng, i + 1)]);
  return r;
}

Election random_election(int m, int voters, Rng& rng) {
  std::vector<Vote> votes;
  for (int i = 0; i < voters; ++i) votes.push_back({1, random_ranking(m, rng), false});
  return Election(m, std::move(votes));
}

Graph random_graph(int n, int percent, Rng& rng) {
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (draw(rng, 100) < percent) g.add_edge(u, v);
    }
  }
  return g;
}

Digraph random_digraph(int n, int percent, Rng& rng) {
  Digraph d(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (draw(rng, 100) >= percent) continue;
      if (draw(rng, 2)) {
        d.add_arc(u, v);
      } else {
        d.add_arc(v, u);
      }
    }
  }
  return d;
}

namespace {

Literal random_literal(int num_vars, Rng& rng) { return {draw(rng, num_vars), draw(rng, 2) == 1}; }

std::vector<int> random_subset(const std::vector<int>& from, Rng& rng) {
  std::vector<int> out;
  for (int v : from) {
    if (draw(rng, 2)) out.push_back(v);
  }
  return out;
}

std::vector<int> all_but(int n, int skip) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (v != skip) out.push_back(v);
  }
  return out;
}

}  // namespace

Cnf3 random_cnf3(int num_vars, int num_clauses, Rng& rng) {
  if (num_vars < 1) throw InvalidInput("need at least one variable");
  Cnf3 f{num_vars, {}};
  for (int i = 0; i < num_clauses; ++i) {
    f.clauses.push_back({random_literal(num_vars, rng), random_literal(num_vars, rng), random_literal(num_vars, rng)});
  }
  return f;
}

Qbf2 random_qbf2(int n, int num_clauses, Rng& rng) {
  Cnf3 f = random_cnf3(2 * n, num_clauses, rng);
  return {n, std::move(f.clauses)};
}

GraphControlInstance random_graph_control(GraphControlKind kind, int n, int k, Rng& rng) {
  if (n < 1) throw InvalidInput("need at least one vertex");
  GraphControlInstance inst;
  inst.kind = kind;
  inst.limit = k;
  inst.target = draw(rng, n);
  const int percent = 30 + draw(rng, 41);
  switch (kind) {
    case GraphControlKind::vcms:
    case GraphControlKind::ismd:
      inst.graph = random_graph(n, percent, rng);
      inst.selectable = random_subset(all_but(n, inst.target), rng);
      break;
    case GraphControlKind::fasms:
      inst.digraph = random_digraph(n, percent, rng);
      inst.selectable = random_subset(all_but(n, inst.target), rng);
      break;
    case GraphControlKind::vcma:
    case GraphControlKind::fasma: {
      if (kind == GraphControlKind::vcma) {
        inst.graph = random_graph(n, percent, rng);
      } else {
        inst.digraph = random_digraph(n, percent, rng);
      }
      inst.base.push_back(inst.target);
      for (int v : all_but(n, inst.target)) (draw(rng, 2) ? inst.base : inst.selectable).push_back(v);
      std::sort(inst.base.begin(), inst.base.end());
      break;
    }
    case GraphControlKind::fasmaa: {
      inst.digraph = random_digraph(n, percent, rng);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (inst.digraph.has_arc(u, v) || inst.digraph.has_arc(v, u) || draw(rng, 2)) continue;
          inst.addable_arcs.push_back(draw(rng, 2) ? std::pair{u, v} : std::pair{v, u});
        }
      }
      break;
    }
    case GraphControlKind::gnd:
      inst = make_gnd(random_graph(n, percent, rng), k, 1 + draw(rng, 2));
      break;
  }
  validate(inst);
  return inst;
}

ControlInstance random_ccac(int registered, int unregistered, int voters, int limit, Rng& rng) {
  if (registered < 1) throw InvalidInput("need a registered candidate");
  ControlInstance inst;
  inst.rule = Rule::kemeny;
  inst.kind = ControlKind::ccac;
  inst.election = random_election(registered + unregistered, voters, rng);
  for (int c = registered; c < registered + unregistered; ++c) inst.unregistered.push_back(c);
  inst.limit = limit;
  inst.preferred = 0;
  validate(inst);
  return inst;
}

std::vector<Clause> clause_patterns(int num_vars) {
  const int lits = 2 * num_vars;
  auto lit = [](int code) { return Literal{code / 2, code % 2 == 1}; };
  std::vector<Clause> out;
  for (int a = 0; a < lits; ++a) {
    for (int b = a; b < lits; ++b) {
      for (int c = b; c < lits; ++c) out.push_back({lit(a), lit(b), lit(c)});
    }
  }
  return out;
}

std::vector<Cnf3> cnf3_patterns(int num_vars, int max_clauses) {
  auto clauses = clause_patterns(num_vars);
  const int p = static_cast<int>(clauses.size());
  std::vector<Cnf3> out;
  std::vector<int> idx;
  // multisets of clause indices, size 1..max_clauses, nondecreasing
  auto rec = [&](auto&& self, int from, int left) -> void {
    if (!idx.empty()) {
      Cnf3 f{num_vars, {}};
      for (int i : idx) f.clauses.push_back(clauses[i]);
      out.push_back(std::move(f));
    }
    if (left == 0) return;
    for (int i = from; i < p; ++i) {
      idx.push_back(i);
      self(self, i, left - 1);
      idx.pop_back();
    }
  };
  rec(rec, 0, max_clauses);
  return out;
}

std::vector<Qbf2> qbf2_patterns(int n, int max_clauses) {
  std::vector<Qbf2> out;
  for (auto& f : cnf3_patterns(2 * n, max_clauses)) out.push_back({n, std::move(f.clauses)});
  return out;
}

}  // namespace hardctl
