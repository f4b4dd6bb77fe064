#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardctl/graph.hpp"

namespace hardctl {

enum class GraphControlKind { vcms, vcma, ismd, fasms, fasma, fasmaa, gnd };

std::string to_string(GraphControlKind k);
GraphControlKind graph_control_kind_from_string(std::string_view s);
bool is_directed(GraphControlKind k);

/// A graph membership-control instance.
///
/// vcms / fasms / ismd / gnd delete up to `limit` vertices of `selectable`.
/// vcma / fasma start from `base` and add up to `limit` vertices of
/// `selectable`; the graph holds both. fasmaa adds up to `limit` arcs of
/// `addable_arcs` to `digraph`. gnd asks for no clique of size ell+1.
struct GraphControlInstance {
  GraphControlKind kind = GraphControlKind::vcms;
  Graph graph;
  Digraph digraph;
  std::vector<int> base;
  std::vector<int> selectable;
  std::vector<std::pair<int, int>> addable_arcs;
  int limit = 0;
  int target = 0;
  int ell = 0;

  friend bool operator==(const GraphControlInstance&, const GraphControlInstance&) = default;
};

void validate(const GraphControlInstance& inst);

struct GraphControlLimits {
  std::uint64_t max_subsets = std::uint64_t{1} << 22;
  GraphLimits graph{};
};

struct GraphControlOutcome {
  bool decision = false;
  /// Chosen vertices (or indices into addable_arcs for fasmaa), ascending.
  std::vector<int> witness;
  std::uint64_t subsets_examined = 0;
};

/// The inner predicate for one concrete choice of selectable items.
bool graph_control_holds(const GraphControlInstance& inst, const std::vector<int>& chosen,
                         const GraphLimits& limits = {});

/// Tries every choice of at most `limit` items, smallest first then
/// lexicographically; the witness is the first success.
GraphControlOutcome decide_graph_control(const GraphControlInstance& inst, const GraphControlLimits& limits = {});

/// Text format: `t <kind>`, `p <n>`, `e u v` or `a u v`, `s ids...`
/// (selectable), `b ids...` (base, add kinds), `B u v` (addable arc),
/// `k <limit>`, `v <target>`, `l <ell>`. Ids are 1-based.
GraphControlInstance parse_graph_control(std::string_view text);
std::string format_graph_control(const GraphControlInstance& inst);

}  // namespace hardctl
