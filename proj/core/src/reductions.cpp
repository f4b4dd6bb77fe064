#include "hardctl/reductions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "hardctl/error.hpp"
#include "hardctl/subsets.hpp"

namespace hardctl {

std::int64_t ReductionTrace::count(const std::string& key) const {
  for (const auto& [k, v] : counts) {
    if (k == key) return v;
  }
  throw InvalidInput("trace has no count '" + key + "'");
}

const std::vector<int>& ReductionTrace::part(const std::string& key) const {
  for (const auto& [k, v] : parts) {
    if (k == key) return v;
  }
  throw InvalidInput("trace has no part '" + key + "'");
}

std::string format_trace(const ReductionTrace& t) {
  std::ostringstream os;
  os << "reduction: " << t.name << '\n';
  for (const auto& [k, v] : t.counts) os << "count " << k << " = " << v << '\n';
  for (const auto& [k, ids] : t.parts) {
    os << "part " << k << " =";
    for (int id : ids) os << ' ' << id + 1;
    os << '\n';
  }
  return os.str();
}

namespace {

std::vector<int> range(int from, int to) {
  std::vector<int> v(std::max(0, to - from));
  std::iota(v.begin(), v.end(), from);
  return v;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

// Karp graph core shared by the plain and the H construction: literal
// vertices plus clause cliques of size `clique` starting at `clause_base`.
void add_literal_edges(Graph& g, int num_vars) {
  for (int t = 0; t < num_vars; ++t) g.add_edge(2 * t, 2 * t + 1);
}

void add_clause_gadgets(Graph& g, const std::vector<Clause>& clauses, int clause_base, int clique) {
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    int first = clause_base + clique * static_cast<int>(i);
    for (int a = 0; a < clique; ++a) {
      for (int b = a + 1; b < clique; ++b) g.add_edge(first + a, first + b);
    }
    for (int j = 0; j < 3; ++j) g.add_edge(first + j, literal_vertex(clauses[i][j]));
  }
}

Graph build_h(const Qbf2& f) {
  const int n = f.n, m = static_cast<int>(f.clauses.size());
  const int v_hat = 4 * n + 4 * m;
  if (v_hat + 1 > Graph::kMaxVertices) throw ResourceLimit("H gadget would exceed 64 vertices");
  Graph h(v_hat + 1);
  add_literal_edges(h, 2 * n);
  add_clause_gadgets(h, f.clauses, 4 * n, 4);
  for (int i = 0; i < m; ++i) h.add_edge(4 * n + 4 * i + 3, v_hat);
  return h;
}

ReductionTrace h_trace(const std::string& name, const Qbf2& f) {
  const int n = f.n, m = static_cast<int>(f.clauses.size());
  ReductionTrace t;
  t.name = name;
  t.counts = {{"n", n}, {"m", m}, {"h_vertices", 4 * n + 4 * m + 1}};
  std::vector<int> xs, ys, clause_vs, ds;
  for (int i = 0; i < n; ++i) {
    xs.push_back(2 * f.x(i));
    xs.push_back(2 * f.x(i) + 1);
    ys.push_back(2 * f.y(i));
    ys.push_back(2 * f.y(i) + 1);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < 3; ++j) clause_vs.push_back(4 * n + 4 * i + j);
    ds.push_back(4 * n + 4 * i + 3);
  }
  t.parts = {{"x_literals", xs}, {"y_literals", ys}, {"clause_vertices", clause_vs}, {"d", ds}, {"v_hat", {4 * n + 4 * m}}};
  return t;
}

}  // namespace

KarpImage karp_3sat_to_vc(const Cnf3& f) {
  validate(f);
  const int nv = f.num_vars, m = static_cast<int>(f.clauses.size());
  if (2 * nv + 3 * m > Graph::kMaxVertices) throw ResourceLimit("Karp graph would exceed 64 vertices");
  KarpImage img;
  img.graph = Graph(2 * nv + 3 * m);
  add_literal_edges(img.graph, nv);
  add_clause_gadgets(img.graph, f.clauses, 2 * nv, 3);
  img.target = nv + 2 * m;
  img.trace.name = "karp_3sat_to_vc";
  img.trace.counts = {{"variables", nv},
                      {"clauses", m},
                      {"vertices", img.graph.size()},
                      {"edges", img.graph.num_edges()},
                      {"cover_target", img.target}};
  img.trace.parts = {{"literal_vertices", range(0, 2 * nv)}, {"clause_vertices", range(2 * nv, 2 * nv + 3 * m)}};
  return img;
}

GraphReduction qsat2_to_vcms(const Qbf2& f) {
  validate(f);
  GraphReduction r;
  auto& inst = r.instance;
  inst.kind = GraphControlKind::vcms;
  inst.graph = build_h(f);
  for (int i = 0; i < f.n; ++i) {
    inst.selectable.push_back(2 * f.x(i));
    inst.selectable.push_back(2 * f.x(i) + 1);
  }
  inst.limit = f.n;
  inst.target = inst.graph.size() - 1;
  r.trace = h_trace("qsat2_to_vcms", f);
  require(r.trace.count("h_vertices") == inst.graph.size(), "H vertex count mismatch");
  return r;
}

GraphReduction qsat2_to_vcma(const Qbf2& f) {
  validate(f);
  GraphReduction r;
  auto& inst = r.instance;
  inst.kind = GraphControlKind::vcma;
  inst.graph = build_h(f);
  const int base = inst.graph.size();
  inst.base = range(0, base);
  inst.target = base - 1;
  std::vector<int> primes;
  for (int i = 0; i < f.n; ++i) {
    for (int neg = 0; neg < 2; ++neg) {
      int v = inst.graph.add_vertex();
      inst.graph.add_edge(v, 2 * f.x(i) + neg);
      inst.selectable.push_back(v);
      primes.push_back(v);
    }
  }
  inst.limit = f.n;
  r.trace = h_trace("qsat2_to_vcma", f);
  r.trace.counts.emplace_back("addable_vertices", static_cast<std::int64_t>(primes.size()));
  r.trace.parts.emplace_back("x_primes", primes);
  return r;
}

Digraph doubled_digraph(const Graph& g) {
  const int n = g.size();
  if (2 * n > Digraph::kMaxVertices) throw ResourceLimit("doubled digraph would exceed 64 vertices");
  Digraph d(2 * n);
  for (int v = 0; v < n; ++v) d.add_arc(v, n + v);
  for (auto [v, w] : g.edges()) {
    d.add_arc(n + v, w);
    d.add_arc(n + w, v);
  }
  return d;
}

namespace {

ReductionTrace doubling_trace(const std::string& name, const Graph& g, const Digraph& d) {
  ReductionTrace t;
  t.name = name;
  t.counts = {{"source_vertices", g.size()},
              {"source_edges", g.num_edges()},
              {"vertices", d.size()},
              {"arcs", d.num_arcs()}};
  t.parts = {{"originals", range(0, g.size())}, {"copies", range(g.size(), 2 * g.size())}};
  require(d.num_arcs() == g.size() + 2 * g.num_edges(), "f(G) arc count mismatch");
  return t;
}

}  // namespace

GraphReduction vcms_to_fasms(const GraphControlInstance& src) {
  if (src.kind != GraphControlKind::vcms) throw InvalidInput("expected a vcms instance");
  validate(src);
  GraphReduction r;
  auto& inst = r.instance;
  inst.kind = GraphControlKind::fasms;
  inst.digraph = doubled_digraph(src.graph);
  for (int v : src.selectable) {
    if (v != src.target) inst.selectable.push_back(v);
  }
  inst.limit = src.limit;
  inst.target = src.graph.size() + src.target;
  r.trace = doubling_trace("vcms_to_fasms", src.graph, inst.digraph);
  return r;
}

GraphReduction vcma_to_fasma(const GraphControlInstance& src) {
  if (src.kind != GraphControlKind::vcma) throw InvalidInput("expected a vcma instance");
  validate(src);
  const int n = src.graph.size();
  GraphReduction r;
  auto& inst = r.instance;
  inst.kind = GraphControlKind::fasma;
  inst.digraph = doubled_digraph(src.graph);
  // Copies of addable vertices stay in the base: without their original
  // they have no entering arc and never change an optimum.
  for (int v : src.base) inst.base.push_back(v);
  for (int v = 0; v < n; ++v) inst.base.push_back(n + v);
  std::sort(inst.base.begin(), inst.base.end());
  inst.selectable = src.selectable;
  inst.limit = src.limit;
  inst.target = n + src.target;
  r.trace = doubling_trace("vcma_to_fasma", src.graph, inst.digraph);
  return r;
}

GraphReduction vcma_to_fasmaa(const GraphControlInstance& src) {
  if (src.kind != GraphControlKind::vcma) throw InvalidInput("expected a vcma instance");
  validate(src);
  const int n = src.graph.size();
  GraphReduction r;
  auto& inst = r.instance;
  inst.kind = GraphControlKind::fasmaa;
  Digraph full = doubled_digraph(src.graph);
  inst.digraph = Digraph(2 * n);
  VertexMask addable = list_to_mask(src.selectable);
  for (auto [u, v] : full.arcs()) {
    bool held_back = v == n + u && (addable & bit(u));
    if (!held_back) inst.digraph.add_arc(u, v);
  }
  std::vector<int> sel = src.selectable;
  std::sort(sel.begin(), sel.end());
  for (int v : sel) inst.addable_arcs.emplace_back(v, n + v);
  inst.limit = src.limit;
  inst.target = n + src.target;
  r.trace = doubling_trace("vcma_to_fasmaa", src.graph, full);
  r.trace.counts.emplace_back("addable_arcs", static_cast<std::int64_t>(inst.addable_arcs.size()));
  return r;
}

Digraph dwork_hat(const Digraph& d) {
  auto arcs = d.arcs();
  const int n = d.size();
  if (n + static_cast<int>(arcs.size()) > Digraph::kMaxVertices) {
    throw ResourceLimit("subdivided digraph would exceed 64 vertices");
  }
  Digraph h(n + static_cast<int>(arcs.size()));
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    h.add_arc(arcs[a].first, n + static_cast<int>(a));
    h.add_arc(n + static_cast<int>(a), arcs[a].second);
  }
  return h;
}

GraphControlInstance make_gnd(const Graph& g, int k, int ell) {
  GraphControlInstance inst;
  inst.kind = GraphControlKind::gnd;
  inst.graph = g;
  inst.selectable = range(0, g.size());
  inst.limit = k;
  inst.ell = ell;
  validate(inst);
  return inst;
}

namespace {

Graph edgeless(int n) { return Graph(n); }

}  // namespace

GraphReduction gnd_to_vcms(const GraphControlInstance& src) {
  if (src.kind != GraphControlKind::gnd) throw InvalidInput("expected a gnd instance");
  if (src.ell < 1) throw InvalidInput("ell must be at least 1");
  validate(src);
  const int n = src.graph.size();
  GraphReduction r;
  auto& inst = r.instance;
  inst.kind = GraphControlKind::vcms;
  inst.graph = join(disjoint_union(complement(src.graph), edgeless(1)), edgeless(src.ell + 1));
  inst.selectable = range(0, inst.graph.size());
  inst.limit = src.limit;
  inst.target = n;
  r.trace.name = "gnd_to_vcms";
  r.trace.counts = {{"vertices", inst.graph.size()}, {"edges", inst.graph.num_edges()}};
  r.trace.parts = {{"complement_side", range(0, n)}, {"v_hat", {n}}, {"edgeless_side", range(n + 1, inst.graph.size())}};
  return r;
}

GraphReduction gnd_to_ismd(const GraphControlInstance& src) {
  if (src.kind != GraphControlKind::gnd) throw InvalidInput("expected a gnd instance");
  if (src.ell < 1) throw InvalidInput("ell must be at least 1");
  validate(src);
  const int n = src.graph.size();
  GraphReduction r;
  auto& inst = r.instance;
  inst.kind = GraphControlKind::ismd;
  inst.graph = join(complement(src.graph), edgeless(src.ell));
  inst.selectable = range(0, inst.graph.size());
  inst.limit = src.limit;
  inst.target = n;
  r.trace.name = "gnd_to_ismd";
  r.trace.counts = {{"vertices", inst.graph.size()}, {"edges", inst.graph.num_edges()}};
  r.trace.parts = {{"complement_side", range(0, n)}, {"edgeless_side", range(n, inst.graph.size())}};
  return r;
}

// ------------------------------------------------------------- McGarvey

Election mcgarvey(const Digraph& d) {
  const int n = d.size();
  if (n < 1) throw InvalidInput("McGarvey election needs at least one vertex");
  std::vector<Vote> votes;
  for (auto [v, w] : d.arcs()) {
    Ranking up{v, w}, down;
    for (int c = 0; c < n; ++c) {
      if (c != v && c != w) up.push_back(c);
    }
    for (int c = n - 1; c >= 0; --c) {
      if (c != v && c != w) down.push_back(c);
    }
    down.push_back(v);
    down.push_back(w);
    votes.push_back({1, std::move(up), false});
    votes.push_back({1, std::move(down), false});
  }
  Election e(n, std::move(votes));
  PairwiseMatrix pm(e);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) require(pm.margin(a, b) == (d.has_arc(a, b) ? 2 : d.has_arc(b, a) ? -2 : 0), "McGarvey margin mismatch");
    }
  }
  return e;
}

namespace {

ReductionTrace election_trace(const std::string& name, const Election& e) {
  ReductionTrace t;
  t.name = name;
  t.counts = {{"candidates", e.num_candidates()}, {"voters", e.total_voters()}};
  return t;
}

}  // namespace

ElectionReduction fasms_to_kemeny_ccdcstar(const GraphControlInstance& src) {
  if (src.kind != GraphControlKind::fasms) throw InvalidInput("expected a fasms instance");
  validate(src);
  ElectionReduction r;
  auto& inst = r.instance;
  inst.rule = Rule::kemeny;
  inst.kind = ControlKind::ccdc_star;
  inst.election = mcgarvey(src.digraph);
  inst.deletable = src.selectable;
  std::sort(inst.deletable.begin(), inst.deletable.end());
  inst.limit = src.limit;
  inst.preferred = src.target;
  validate(inst);
  r.trace = election_trace("fasms_to_kemeny_ccdcstar", inst.election);
  require(r.trace.count("voters") == 2 * src.digraph.num_arcs(), "McGarvey voter count mismatch");
  return r;
}

ElectionReduction fasma_to_kemeny_ccac(const GraphControlInstance& src) {
  if (src.kind != GraphControlKind::fasma) throw InvalidInput("expected a fasma instance");
  validate(src);
  // vertices outside base and addable play no role; keep only those two
  std::vector<int> used = src.base;
  used.insert(used.end(), src.selectable.begin(), src.selectable.end());
  std::sort(used.begin(), used.end());
  std::vector<int> id(src.digraph.size(), -1);
  for (std::size_t i = 0; i < used.size(); ++i) id[used[i]] = static_cast<int>(i);
  Digraph sub(static_cast<int>(used.size()));
  for (auto [u, v] : src.digraph.arcs()) {
    if (id[u] >= 0 && id[v] >= 0) sub.add_arc(id[u], id[v]);
  }
  ElectionReduction r;
  auto& inst = r.instance;
  inst.rule = Rule::kemeny;
  inst.kind = ControlKind::ccac;
  inst.election = mcgarvey(sub);
  for (int v : src.selectable) inst.unregistered.push_back(id[v]);
  std::sort(inst.unregistered.begin(), inst.unregistered.end());
  inst.limit = src.limit;
  inst.preferred = id[src.target];
  validate(inst);
  r.trace = election_trace("fasma_to_kemeny_ccac", inst.election);
  r.trace.parts = {{"candidate_vertices", used}};
  return r;
}

ElectionReduction fasmaa_to_kemeny_prime_ccav(const GraphControlInstance& src) {
  if (src.kind != GraphControlKind::fasmaa) throw InvalidInput("expected a fasmaa instance");
  validate(src);
  ElectionReduction r;
  auto& inst = r.instance;
  inst.rule = Rule::kemeny_prime;
  inst.kind = ControlKind::ccav;
  std::vector<Vote> votes;
  for (auto [u, w] : src.digraph.arcs()) votes.push_back({1, {u, w}, true});
  inst.election = Election(src.digraph.size(), std::move(votes));
  for (auto [u, w] : src.addable_arcs) inst.addable_voters.push_back({1, {u, w}, true});
  inst.limit = src.limit;
  inst.preferred = src.target;
  validate(inst);
  r.trace = election_trace("fasmaa_to_kemeny_prime_ccav", inst.election);
  r.trace.counts.emplace_back("addable_voters", static_cast<std::int64_t>(inst.addable_voters.size()));
  return r;
}

// ---------------------------------------------------------------- Young

namespace {

bool young_precondition(const Graph& g, int k, const GraphLimits& limits) {
  bool ok = true;
  for_each_small_subset(g.size(), k, [&](const std::vector<int>& w) {
    VertexMask present = full_mask(g.size()) & ~list_to_mask(w);
    if (std::popcount(max_independent_set(g, present, limits)) < 3) {
      ok = false;
      return true;
    }
    return false;
  });
  return ok;
}

void add_clique(Graph& g, int size) {
  std::vector<int> vs;
  for (int i = 0; i < size; ++i) vs.push_back(g.add_vertex());
  for (int a = 0; a < size; ++a) {
    for (int b = a + 1; b < size; ++b) g.add_edge(vs[a], vs[b]);
  }
}

}  // namespace

Graph pad_for_young(const Graph& g, int k, const GraphLimits& limits) {
  if (k < 0) throw InvalidInput("limit must be nonnegative");
  Graph h = g;
  if (young_precondition(h, k, limits)) return h;
  const int size = std::max(k + 1, 2);
  add_clique(h, size);
  add_clique(h, size);
  while (!young_precondition(h, k, limits)) add_clique(h, size);
  return h;
}

YoungImage ismd_to_young_ccdv(const Graph& g, int k, int target, const GraphLimits& limits) {
  const int n = g.size();
  if (target < 0 || target >= n) throw InvalidInput("target vertex out of range");
  if (k < 0 || k > n) throw InvalidInput("limit must be in 0..|V|");
  for (int v = 0; v < n; ++v) {
    if (g.neighbours(v) == 0) throw InvalidInput("graph has an isolated vertex " + std::to_string(v + 1));
  }
  if (!young_precondition(g, k, limits)) {
    throw InvalidInput("some deletion of at most k vertices leaves independence number below 3 (pad first)");
  }
  auto edges = g.edges();
  const int ne = static_cast<int>(edges.size());
  YoungImage img;
  img.a = ne;
  img.p = ne + 1;
  img.q = ne + 2;
  const int m = ne + 3;
  auto with_tail = [&](std::vector<Candidate> head, const std::vector<Candidate>& suffix) {
    std::vector<char> used(m, 0);
    for (Candidate c : head) used[c] = 1;
    for (Candidate c : suffix) used[c] = 1;
    for (Candidate c = 0; c < m; ++c) {
      if (!used[c]) head.push_back(c);
    }
    head.insert(head.end(), suffix.begin(), suffix.end());
    return head;
  };
  std::vector<Vote> votes;
  std::vector<int> type_ia, type_ib;
  for (int v = 0; v < n; ++v) {
    std::vector<Candidate> head;
    for (int e = 0; e < ne; ++e) {
      if (edges[e].first == v || edges[e].second == v) head.push_back(e);
    }
    head.push_back(img.a);
    head.push_back(img.q);
    if (!g.has_edge(v, target)) {
      head.push_back(img.p);
      votes.push_back({1, with_tail(head, {}), false});
      type_ia.push_back(v);
    } else {
      votes.push_back({1, with_tail(head, {img.p}), false});
      type_ib.push_back(v);
    }
  }
  img.type2_voter = n;
  votes.push_back({1, with_tail({img.p, img.q}, {img.a}), false});
  votes.push_back({2 * n, with_tail({}, {img.p, img.q, img.a}), false});

  auto& inst = img.instance;
  inst.rule = Rule::young;
  inst.kind = ControlKind::ccdv;
  inst.election = Election(m, std::move(votes));
  inst.limit = k;
  inst.preferred = img.p;
  validate(inst);

  img.trace.name = "ismd_to_young_ccdv";
  img.trace.counts = {{"vertices", n},
                      {"edges", ne},
                      {"candidates", m},
                      {"voters", inst.election.total_voters()},
                      {"type_ia", static_cast<std::int64_t>(type_ia.size())},
                      {"type_ib", static_cast<std::int64_t>(type_ib.size())},
                      {"type_iii", 2 * n}};
  img.trace.parts = {{"type_ia_vertices", type_ia}, {"type_ib_vertices", type_ib}, {"a_p_q", {img.a, img.p, img.q}}};
  require(inst.election.total_voters() == 3 * n + 1, "Young gadget voter count mismatch");
  return img;
}

// -------------------------------------------------------------- Dodgson

namespace {

/// Ranking builder for votes written as (prefix > ... > suffix): the
/// unnamed middle is every other candidate in ascending id order.
Ranking tail_vote(int m, const std::vector<Candidate>& prefix, const std::vector<Candidate>& suffix) {
  std::vector<char> used(m, 0);
  for (Candidate c : prefix) used[c] = 1;
  for (Candidate c : suffix) used[c] = 1;
  Ranking r = prefix;
  for (Candidate c = 0; c < m; ++c) {
    if (!used[c]) r.push_back(c);
  }
  r.insert(r.end(), suffix.begin(), suffix.end());
  return r;
}

std::vector<Candidate> concat(std::initializer_list<std::vector<Candidate>> parts) {
  std::vector<Candidate> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

DodgsonScoreImage sat3_to_dodgson_score(const Cnf3& f) {
  validate(f);
  const int n = f.num_vars, m = static_cast<int>(f.clauses.size());
  if (n < 1 || m < 1) throw InvalidInput("the Dodgson score gadget needs n >= 1 and m >= 1");
  const int num = n + 4 * m + 2;
  auto z_hat = [&](int t) { return t; };
  auto c = [&](int i) { return n + i; };
  auto cij = [&](int i, int j) { return n + m + 3 * i + j; };
  const Candidate q = n + 4 * m, b = n + 4 * m + 1;
  std::vector<Vote> votes;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < 3; ++j) votes.push_back({1, tail_vote(num, {c(i), cij(i, j), q}, {}), false});
  }
  for (int t = 0; t < n; ++t) {
    for (int neg = 0; neg < 2; ++neg) {
      std::vector<Candidate> head{z_hat(t)};
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (f.clauses[i][j].var == t && f.clauses[i][j].negated == (neg == 1)) head.push_back(cij(i, j));
        }
      }
      head.push_back(q);
      votes.push_back({1, tail_vote(num, head, {}), false});
    }
  }
  std::vector<Candidate> cs;
  for (int i = 0; i < m; ++i) cs.push_back(c(i));
  votes.push_back({1, tail_vote(num, {}, concat({{b, q}, cs})), false});
  if (2 * n + 3 * m - 5 > 0) votes.push_back({2 * n + 3 * m - 5, tail_vote(num, {}, {b, q}), false});

  DodgsonScoreImage img;
  img.election = Election(num, std::move(votes));
  img.q = q;
  img.budget = 4 * m + n;
  img.trace.name = "sat3_to_dodgson_score";
  img.trace.counts = {{"n", n},
                      {"m", m},
                      {"candidates", num},
                      {"block_i", 3 * m},
                      {"block_ii", 2 * n},
                      {"block_iii", 2 * n + 3 * m - 4},
                      {"voters", img.election.total_voters()},
                      {"budget", img.budget}};
  img.trace.parts = {{"z_hat", range(0, n)}, {"c", range(n, n + m)}, {"c_ij", range(n + m, n + 4 * m)}, {"q", {q}}, {"b", {b}}};
  require(img.election.total_voters() == 3 * m + 2 * n + 2 * n + 3 * m - 4, "Dodgson score gadget voter count mismatch");
  return img;
}

namespace {

DodgsonControlImage build_dodgson_control(const Qbf2& source) {
  validate(source);
  const int m = static_cast<int>(source.clauses.size());
  DodgsonControlImage img;
  img.padded = pad_qbf2(source, std::max(7, m + 1));
  const Qbf2& f = img.padded;
  const int n = f.n;
  const int m_hat = f.y_occurrences();
  img.n = n;
  img.m = m;
  img.m_hat = m_hat;

  // candidate ids
  int next = 0;
  auto block = [&](int size) {
    std::vector<Candidate> ids = range(next, next + size);
    next += size;
    return ids;
  };
  const auto x_hat = block(n), y_hat = block(n), cs = block(m);
  std::map<std::pair<int, int>, Candidate> cij;
  std::vector<Candidate> all_cij;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (f.is_y(f.clauses[i][j].var)) {
        cij[{i, j}] = next;
        all_cij.push_back(next++);
      }
    }
  }
  const auto bs = block(4);
  const Candidate b1 = bs[0], b2 = bs[1], b3 = bs[2], b4 = bs[3];
  img.x_pos = block(n);
  img.x_neg = block(n);
  img.p = next++;
  img.q = next++;
  img.d = next++;
  const int num = next;
  const Candidate p = img.p, q = img.q, d = img.d;
  const auto xx = concat({img.x_pos, img.x_neg});

  std::vector<Vote> votes;
  std::vector<std::pair<std::string, std::int64_t>> blocks;
  auto add = [&](int count, Ranking r) {
    if (count > 0) votes.push_back({count, std::move(r), false});
  };
  auto mark = [&](const std::string& name) {
    std::int64_t before = 0;
    for (auto& [k, v] : blocks) before += v;
    int total = 0;
    for (const Vote& v : votes) total += v.count;
    blocks.emplace_back(name, total - before);
  };

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (f.is_y(f.clauses[i][j].var)) add(1, tail_vote(num, {cs[i], cij[{i, j}], q, b1, p, d}, {}));
    }
  }
  mark("block_ia");
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Literal& l = f.clauses[i][j];
      if (f.is_y(l.var)) continue;
      Candidate lit = l.negated ? img.x_neg[l.var] : img.x_pos[l.var];
      add(1, tail_vote(num, {cs[i], lit, q, b1, p, d}, {}));
    }
  }
  mark("block_ib");
  for (int t = 0; t < n; ++t) {
    for (int neg = 0; neg < 2; ++neg) {
      std::vector<Candidate> head{y_hat[t]};
      for (auto& [key, id] : cij) {
        const Literal& l = f.clauses[key.first][key.second];
        if (l.var == f.y(t) && l.negated == (neg == 1)) head.push_back(id);
      }
      std::sort(head.begin() + 1, head.end());
      head.insert(head.end(), {q, b1, p, d});
      add(1, tail_vote(num, head, {}));
    }
  }
  mark("block_ii");
  for (int t = 0; t < n; ++t) {
    add(1, tail_vote(num, {x_hat[t], img.x_pos[t], p, q, d}, {}));
    add(1, tail_vote(num, {x_hat[t], img.x_neg[t], p, q, d}, {}));
  }
  mark("block_iii");
  add(1, tail_vote(num, {d}, concat({{b2}, cs, all_cij, y_hat, {p, b1, q}})));
  add(1, tail_vote(num, {d}, concat({{b2}, x_hat, {q, b1, b3, p}})));
  mark("block_iv");
  add(1, tail_vote(num, {d}, concat({{b2, p, q}, cs})));
  add(2 * n + 3 * m - 6, tail_vote(num, {d}, {b2, p, b1, q}));
  mark("block_v");
  add(4 * n + m + m_hat - 2, tail_vote(num, {p, q, d}, {}));
  add(2 * n + m + m_hat - 4, tail_vote(num, {}, concat({{b3, q, b4, d, p, b1, b2}, xx})));
  add(4 * n - 1, tail_vote(num, {d}, concat({{b2, q, b1, p, b3, b4}, xx})));
  add(2, tail_vote(num, {}, concat({{b3, d, p, b4, q, b1, b2}, xx})));
  mark("block_vi");

  auto& inst = img.instance;
  inst.rule = Rule::dodgson;
  inst.election = Election(num, std::move(votes));
  inst.limit = 2 * n;
  inst.preferred = p;

  img.trace.counts = {{"n", n}, {"m", m}, {"m_hat", m_hat}, {"candidates", num}, {"voters", inst.election.total_voters()}};
  img.trace.counts.insert(img.trace.counts.end(), blocks.begin(), blocks.end());
  img.trace.parts = {{"x_hat", x_hat}, {"y_hat", y_hat}, {"c", cs},        {"c_ij", all_cij}, {"buffers", bs},
                     {"x", img.x_pos}, {"x_bar", img.x_neg}, {"p_q_d", {p, q, d}}};
  require(inst.election.total_voters() == 16 * n + 8 * m + 2 * m_hat - 8, "Dodgson gadget voter count mismatch");
  return img;
}

}  // namespace

DodgsonControlImage qsat2_to_dodgson_ccdcstar(const Qbf2& f) {
  DodgsonControlImage img = build_dodgson_control(f);
  img.instance.kind = ControlKind::ccdc_star;
  img.instance.deletable = concat({img.x_pos, img.x_neg});
  validate(img.instance);
  img.trace.name = "qsat2_to_dodgson_ccdcstar";
  return img;
}

DodgsonControlImage qsat2_to_dodgson_ccac(const Qbf2& f) {
  DodgsonControlImage img = build_dodgson_control(f);
  img.instance.kind = ControlKind::ccac;
  img.instance.unregistered = concat({img.x_pos, img.x_neg});
  validate(img.instance);
  img.trace.name = "qsat2_to_dodgson_ccac";
  return img;
}

}  // namespace hardctl
