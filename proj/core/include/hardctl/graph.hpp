#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardctl/ordering.hpp"

namespace hardctl {

/// Vertex sets are bitmasks; graphs hold at most 64 vertices.
using VertexMask = std::uint64_t;

inline VertexMask bit(int v) { return VertexMask{1} << v; }
VertexMask full_mask(int n);
std::vector<int> mask_to_list(VertexMask m);
VertexMask list_to_mask(const std::vector<int>& vs);

/// Simple undirected graph.
class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  Graph() = default;
  explicit Graph(int n);

  int size() const noexcept { return n_; }
  /// Adds {u, v}; duplicates are ignored, self-loops rejected.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1U; }
  VertexMask neighbours(int v) const { return adj_[v]; }
  int num_edges() const;
  /// Edges {u, v} with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const;
  /// Adds a vertex and returns its id.
  int add_vertex();

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::vector<VertexMask> adj_;
};

/// Irreflexive, antisymmetric digraph.
class Digraph {
 public:
  static constexpr int kMaxVertices = 64;

  Digraph() = default;
  explicit Digraph(int n);

  int size() const noexcept { return n_; }
  /// Adds (u, v); duplicates are ignored; loops and 2-cycles rejected.
  void add_arc(int u, int v);
  bool has_arc(int u, int v) const { return (out_[u] >> v) & 1U; }
  VertexMask out(int v) const { return out_[v]; }
  VertexMask in(int v) const;
  int num_arcs() const;
  /// Arcs sorted by (tail, head).
  std::vector<std::pair<int, int>> arcs() const;
  int add_vertex();

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  int n_ = 0;
  std::vector<VertexMask> out_;
};

/// Complement graph.
Graph complement(const Graph& g);
/// Disjoint union; vertices of b are shifted by a.size().
Graph disjoint_union(const Graph& a, const Graph& b);
/// Join: disjoint union plus every edge between the two sides.
Graph join(const Graph& a, const Graph& b);
/// Subgraph induced by `keep`, renumbered ascending.
Graph induced(const Graph& g, VertexMask keep);

/// Graph file: `p n`, then `e u v` lines (1-based); `c` lines are comments.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);
/// Digraph file: `p n`, then `a u v` lines.
Digraph parse_digraph(std::string_view text);
std::string format_digraph(const Digraph& d);

struct GraphLimits {
  /// Exact vertex-cover / independent-set searches.
  int max_vertices = 30;
  /// Branch-and-bound nodes per search.
  std::uint64_t max_nodes = std::uint64_t{1} << 30;
  /// Feedback-arc-set searches go through LinearOrdering.
  int max_fas_vertices = 64;
  OrderingLimits ordering{};
};

struct VertexSetResult {
  int size = 0;
  std::vector<int> vertices;  // ascending
};

/// Maximum independent set of the subgraph induced by `present`.
VertexMask max_independent_set(const Graph& g, VertexMask present, const GraphLimits& limits = {});

VertexSetResult min_vertex_cover(const Graph& g, const GraphLimits& limits = {});
/// Minimum cover size of the subgraph induced by `present`.
int min_vertex_cover_size(const Graph& g, VertexMask present, const GraphLimits& limits = {});

/// True iff v lies in some minimum vertex cover of the subgraph induced by
/// `present` (v must be present).
bool vc_membership(const Graph& g, int v, VertexMask present, const GraphLimits& limits = {});
bool vc_membership(const Graph& g, int v, const GraphLimits& limits = {});

struct Independence {
  int alpha = 0;
  int alpha_v = 0;  // largest independent set containing the queried vertex
};

Independence independence(const Graph& g, int v, VertexMask present, const GraphLimits& limits = {});
Independence independence(const Graph& g, int v, const GraphLimits& limits = {});

/// True iff v lies in some maximum independent set of G[present].
bool is_member(const Graph& g, int v, VertexMask present, const GraphLimits& limits = {});

struct FasResult {
  int size = 0;
  std::vector<int> order;  // an optimal vertex order; backward arcs form a minimum FAS
};

/// Unit-weight ordering problem over the arcs of d.
LinearOrdering fas_ordering(const Digraph& d, const GraphLimits& limits = {});
/// Adds arcs as in fas_ordering for an existing ordering object.
void add_unit_arcs(LinearOrdering& lo, const std::vector<std::pair<int, int>>& arcs);

FasResult min_feedback_arc_set(const Digraph& d, const GraphLimits& limits = {});
/// Min FAS size of the subdigraph induced by `present`.
int min_feedback_arc_set_size(const Digraph& d, VertexMask present, const GraphLimits& limits = {});

/// True iff some optimal vertex order of d[present] puts v first, i.e. some
/// minimum feedback arc set contains every arc entering v.
bool fas_top_membership(const Digraph& d, int v, VertexMask present, const GraphLimits& limits = {});
bool fas_top_membership(const Digraph& d, int v, const GraphLimits& limits = {});

/// Whether G[present] contains a clique of the given size.
bool has_clique(const Graph& g, int size, VertexMask present);

}  // namespace hardctl
