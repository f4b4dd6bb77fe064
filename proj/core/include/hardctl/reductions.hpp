#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hardctl/control.hpp"
#include "hardctl/formula.hpp"
#include "hardctl/graph.hpp"
#include "hardctl/graph_control.hpp"

namespace hardctl {

/// Structural report of one transformation: named counts and named groups
/// of target ids (vertices, candidates or voter indices).
struct ReductionTrace {
  std::string name;
  std::vector<std::pair<std::string, std::int64_t>> counts;
  std::vector<std::pair<std::string, std::vector<int>>> parts;

  std::int64_t count(const std::string& key) const;
  const std::vector<int>& part(const std::string& key) const;
};

std::string format_trace(const ReductionTrace& t);

// ------------------------------------------------------------ 3SAT / VC

/// Literal vertices: variable t has positive vertex 2t and negative 2t+1.
/// Clause i has vertices 2N+3i+j (j = 0..2).
struct KarpImage {
  Graph graph;
  int target = 0;  // N + 2m: cover size reached iff satisfiable
  ReductionTrace trace;
};

KarpImage karp_3sat_to_vc(const Cnf3& f);

/// Vertex of a literal in the Karp graph and the H gadget.
inline int literal_vertex(const Literal& l) { return 2 * l.var + (l.negated ? 1 : 0); }

struct GraphReduction {
  GraphControlInstance instance;
  ReductionTrace trace;
};

/// H: the Karp graph over x and y with each clause triangle extended by d_i
/// (vertex 4n+4i+3) to a K4 and every d_i joined to v-hat (vertex 4n+4m).
/// Deletable: all x-literal vertices; limit n; target v-hat.
GraphReduction qsat2_to_vcms(const Qbf2& f);

/// H plus pendant addable vertices x'_i (4n+4m+1+2i) and xbar'_i (+1).
GraphReduction qsat2_to_vcma(const Qbf2& f);

/// f(G): vertex v keeps id v, its copy v' gets id n+v. Arcs (v,v') for all
/// v and (v',w), (w',v) for every edge {v,w}.
Digraph doubled_digraph(const Graph& g);

GraphReduction vcms_to_fasms(const GraphControlInstance& vcms);
GraphReduction vcma_to_fasma(const GraphControlInstance& vcma);
GraphReduction vcma_to_fasmaa(const GraphControlInstance& vcma);

/// Dwork's subdivision: arc number a (in sorted arc order) becomes vertex
/// n+a with arcs (v, n+a) and (n+a, w).
Digraph dwork_hat(const Digraph& d);

/// A generalized-node-deletion instance: delete <= k vertices of g so that
/// no clique of size ell+1 remains.
GraphControlInstance make_gnd(const Graph& g, int k, int ell);

/// H = (complement(G) + {v-hat}) joined with an edgeless graph on ell+1
/// vertices; every vertex deletable; target v-hat (vertex n).
GraphReduction gnd_to_vcms(const GraphControlInstance& gnd);

/// H = complement(G) joined with an edgeless graph on ell vertices; target
/// the first vertex of the edgeless side (vertex n).
GraphReduction gnd_to_ismd(const GraphControlInstance& gnd);

// ------------------------------------------------------------ elections

/// Two voters per arc (v,w): (v > w > rest ascending) and
/// (rest descending > v > w). Margins are 2 per arc and 0 elsewhere.
Election mcgarvey(const Digraph& d);

struct ElectionReduction {
  ControlInstance instance;
  ReductionTrace trace;
};

ElectionReduction fasms_to_kemeny_ccdcstar(const GraphControlInstance& fasms);
ElectionReduction fasma_to_kemeny_ccac(const GraphControlInstance& fasma);
ElectionReduction fasmaa_to_kemeny_prime_ccav(const GraphControlInstance& fasmaa);

/// Repairs a graph for the Young construction: when some deletion of at
/// most k vertices leaves independence number below 3, disjoint cliques of
/// size max(k+1, 2) are appended (two first, then one at a time) until the
/// check passes.
Graph pad_for_young(const Graph& g, int k, const GraphLimits& limits = {});

/// Young-CCDV image of an ISMD instance. Candidates: the edges of G in
/// sorted order, then a, p, q. Voters: one Type I voter per vertex in
/// vertex order, the Type II voter, then 2|V| Type III voters.
/// Requires no isolated vertices and alpha(G-W) >= 3 for all |W| <= k.
struct YoungImage {
  ControlInstance instance;  // rule young, kind ccdv
  Candidate a = 0, p = 0, q = 0;
  int type2_voter = 0;  // index in the expanded voter list
  ReductionTrace trace;
};

YoungImage ismd_to_young_ccdv(const Graph& g, int k, int target, const GraphLimits& limits = {});

/// Dodgson score gadget for 3SAT. Candidate ids: z-hat_t (t), c_i (n+i),
/// c_{i,j} (n+m+3i+j), q (n+4m), b (n+4m+1).
struct DodgsonScoreImage {
  Election election;
  Candidate q = 0;
  int budget = 0;  // 4m + n
  ReductionTrace trace;
};

DodgsonScoreImage sat3_to_dodgson_score(const Cnf3& f);

/// Dodgson CCDC* / CCAC gadget for a QSAT2 instance. The formula is first
/// padded to n >= max(7, m+1). Candidate ids in order: x-hat, y-hat, c_i,
/// c_{i,j} for y-literal occurrences, b1..b4, x_1..x_n, xbar_1..xbar_n,
/// p, q, d.
struct DodgsonControlImage {
  ControlInstance instance;
  Qbf2 padded;
  int n = 0, m = 0, m_hat = 0;
  Candidate p = 0, q = 0, d = 0;
  std::vector<Candidate> x_pos, x_neg;
  ReductionTrace trace;
};

DodgsonControlImage qsat2_to_dodgson_ccdcstar(const Qbf2& f);
DodgsonControlImage qsat2_to_dodgson_ccac(const Qbf2& f);

}  // namespace hardctl
