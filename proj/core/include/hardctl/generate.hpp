#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hardctl/control.hpp"
#include "hardctl/formula.hpp"
#include "hardctl/graph.hpp"
#include "hardctl/graph_control.hpp"

namespace hardctl {

/// Generators draw raw 64-bit words from mt19937_64 and reduce them by
/// modulo, so a seed gives the same instance on every platform.
using Rng = std::mt19937_64;

/// Uniform-ish integer in [0, n).
inline int draw(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

Ranking random_ranking(int m, Rng& rng);

/// `voters` complete votes (count 1 each) over m candidates.
Election random_election(int m, int voters, Rng& rng);

/// Each edge present with probability percent/100.
Graph random_graph(int n, int percent, Rng& rng);

/// Each unordered pair gets an arc with probability percent/100, in a
/// random direction.
Digraph random_digraph(int n, int percent, Rng& rng);

Cnf3 random_cnf3(int num_vars, int num_clauses, Rng& rng);
Qbf2 random_qbf2(int n, int num_clauses, Rng& rng);

/// A random instance of the given kind on n vertices with limit k. Targets
/// and selectable sets are drawn so that the instance validates.
GraphControlInstance random_graph_control(GraphControlKind kind, int n, int k, Rng& rng);

/// Kemeny CCAC with `registered` + `unregistered` candidates (unregistered
/// last) and `voters` random votes; candidate 0 is preferred.
ControlInstance random_ccac(int registered, int unregistered, int voters, int limit, Rng& rng);

/// Every 3-literal clause over `num_vars` variables as a multiset of
/// literals (nondecreasing literal code 2*var+negated).
std::vector<Clause> clause_patterns(int num_vars);

/// All formulas with 1..max_clauses clauses drawn as multisets from
/// clause_patterns(num_vars), in lexicographic order.
std::vector<Cnf3> cnf3_patterns(int num_vars, int max_clauses);

/// The same enumeration over the variables x_1..x_n, y_1..y_n.
std::vector<Qbf2> qbf2_patterns(int n, int max_clauses);

}  // namespace hardctl
