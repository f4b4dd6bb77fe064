#include "hardctl/graph_control.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "hardctl/error.hpp"
#include "hardctl/subsets.hpp"
#include "text_util.hpp"

namespace hardctl {

namespace {

constexpr std::array<std::pair<GraphControlKind, const char*>, 7> kKindNames{{
    {GraphControlKind::vcms, "vcms"},
    {GraphControlKind::vcma, "vcma"},
    {GraphControlKind::ismd, "ismd"},
    {GraphControlKind::fasms, "fasms"},
    {GraphControlKind::fasma, "fasma"},
    {GraphControlKind::fasmaa, "fasmaa"},
    {GraphControlKind::gnd, "gnd"},
}};

bool is_add_kind(GraphControlKind k) { return k == GraphControlKind::vcma || k == GraphControlKind::fasma; }

int vertex_count(const GraphControlInstance& inst) {
  return is_directed(inst.kind) ? inst.digraph.size() : inst.graph.size();
}

void check_ids(const std::vector<int>& ids, int n, const char* what) {
  std::set<int> seen;
  for (int v : ids) {
    if (v < 0 || v >= n) throw InvalidInput(std::string(what) + " vertex out of range");
    if (!seen.insert(v).second) throw InvalidInput(std::string(what) + " vertex listed twice");
  }
}

}  // namespace

std::string to_string(GraphControlKind k) {
  for (auto [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

GraphControlKind graph_control_kind_from_string(std::string_view s) {
  for (auto [kind, name] : kKindNames) {
    if (s == name) return kind;
  }
  throw InvalidInput("unknown graph control kind '" + std::string(s) + "'");
}

bool is_directed(GraphControlKind k) {
  return k == GraphControlKind::fasms || k == GraphControlKind::fasma || k == GraphControlKind::fasmaa;
}

void validate(const GraphControlInstance& inst) {
  const int n = vertex_count(inst);
  if (inst.limit < 0) throw InvalidInput("limit must be nonnegative");
  check_ids(inst.selectable, n, "selectable");
  check_ids(inst.base, n, "base");
  if (inst.kind == GraphControlKind::gnd) {
    if (inst.ell < 1) throw InvalidInput("ell must be at least 1");
    return;
  }
  if (inst.target < 0 || inst.target >= n) throw InvalidInput("target vertex out of range");
  if (is_add_kind(inst.kind)) {
    VertexMask b = list_to_mask(inst.base), s = list_to_mask(inst.selectable);
    if (b & s) throw InvalidInput("base and addable vertices overlap");
    if (!(b & bit(inst.target))) throw InvalidInput("target must be a base vertex");
  }
  if (inst.kind == GraphControlKind::fasms &&
      std::find(inst.selectable.begin(), inst.selectable.end(), inst.target) != inst.selectable.end()) {
    throw InvalidInput("target must not be deletable");
  }
  if (inst.kind == GraphControlKind::fasmaa) {
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : inst.addable_arcs) {
      if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw InvalidInput("addable arc out of range");
      if (inst.digraph.has_arc(u, v) || inst.digraph.has_arc(v, u) || seen.count({v, u}) || !seen.insert({u, v}).second) {
        throw InvalidInput("addable arcs must be new and keep the digraph antisymmetric");
      }
    }
  }
}

bool graph_control_holds(const GraphControlInstance& inst, const std::vector<int>& chosen, const GraphLimits& limits) {
  const int n = vertex_count(inst);
  if (inst.kind == GraphControlKind::fasmaa) {
    LinearOrdering lo = fas_ordering(inst.digraph, limits);
    for (int i : chosen) lo.add_arc(inst.addable_arcs[i].first, inst.addable_arcs[i].second, 1);
    return lo.can_be_first(inst.target, lo.all());
  }
  VertexMask w = list_to_mask(chosen);
  VertexMask present = is_add_kind(inst.kind) ? (list_to_mask(inst.base) | w) : (full_mask(n) & ~w);
  switch (inst.kind) {
    case GraphControlKind::vcms:
    case GraphControlKind::vcma:
      return (present & bit(inst.target)) && vc_membership(inst.graph, inst.target, present, limits);
    case GraphControlKind::ismd:
      return (present & bit(inst.target)) && is_member(inst.graph, inst.target, present, limits);
    case GraphControlKind::fasms:
    case GraphControlKind::fasma:
      return (present & bit(inst.target)) && fas_top_membership(inst.digraph, inst.target, present, limits);
    case GraphControlKind::gnd:
      return !has_clique(inst.graph, inst.ell + 1, present);
    case GraphControlKind::fasmaa:
      break;
  }
  throw InvariantViolation("unhandled graph control kind");
}

GraphControlOutcome decide_graph_control(const GraphControlInstance& inst, const GraphControlLimits& limits) {
  validate(inst);
  std::vector<int> items;
  if (inst.kind == GraphControlKind::fasmaa) {
    for (int i = 0; i < static_cast<int>(inst.addable_arcs.size()); ++i) items.push_back(i);
  } else {
    items = inst.selectable;
    std::sort(items.begin(), items.end());
  }
  const int n = static_cast<int>(items.size());
  check_subset_budget(n, inst.limit, limits.max_subsets, to_string(inst.kind));
  GraphControlOutcome out;
  std::vector<int> chosen;
  out.subsets_examined = for_each_small_subset(n, inst.limit, [&](const std::vector<int>& idx) {
    chosen.clear();
    for (int i : idx) chosen.push_back(items[i]);
    if (graph_control_holds(inst, chosen, limits.graph)) {
      out.decision = true;
      out.witness = chosen;
      return true;
    }
    return false;
  });
  return out;
}

// ---------------------------------------------------------------- text

GraphControlInstance parse_graph_control(std::string_view text) {
  GraphControlInstance inst;
  bool have_kind = false, have_header = false;
  int line_no = 0;
  auto id_of = [&](std::string_view t) { return static_cast<int>(detail::to_int(t, line_no) - 1); };
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto line = detail::trim(raw);
    if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
    auto tok = detail::split_ws(line);
    const auto tag = tok[0];
    auto need = [&](std::size_t k) {
      if (tok.size() != k) throw ParseError(line_no, "wrong number of fields for '" + std::string(tag) + "'");
    };
    try {
      if (tag == "t") {
        need(2);
        inst.kind = graph_control_kind_from_string(tok[1]);
        have_kind = true;
      } else if (tag == "p") {
        need(2);
        if (!have_kind) throw ParseError(line_no, "'t <kind>' must precede the header");
        int n = static_cast<int>(detail::to_int(tok[1], line_no));
        if (is_directed(inst.kind)) {
          inst.digraph = Digraph(n);
        } else {
          inst.graph = Graph(n);
        }
        have_header = true;
      } else if (tag == "e" || tag == "a") {
        need(3);
        if (!have_header) throw ParseError(line_no, "edge before header");
        if ((tag == "a") != is_directed(inst.kind)) throw ParseError(line_no, "edge type does not match kind");
        if (tag == "a") {
          inst.digraph.add_arc(id_of(tok[1]), id_of(tok[2]));
        } else {
          inst.graph.add_edge(id_of(tok[1]), id_of(tok[2]));
        }
      } else if (tag == "B") {
        need(3);
        inst.addable_arcs.emplace_back(id_of(tok[1]), id_of(tok[2]));
      } else if (tag == "s" || tag == "b") {
        auto& dst = tag == "s" ? inst.selectable : inst.base;
        for (std::size_t i = 1; i < tok.size(); ++i) dst.push_back(id_of(tok[i]));
      } else if (tag == "k") {
        need(2);
        inst.limit = static_cast<int>(detail::to_int(tok[1], line_no));
      } else if (tag == "v") {
        need(2);
        inst.target = id_of(tok[1]);
      } else if (tag == "l") {
        need(2);
        inst.ell = static_cast<int>(detail::to_int(tok[1], line_no));
      } else {
        throw ParseError(line_no, "unknown line tag '" + std::string(tag) + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InvalidInput& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_kind || !have_header) throw ParseError(line_no, "missing 't <kind>' or 'p <n>' line");
  try {
    validate(inst);
  } catch (const InvalidInput& e) {
    throw ParseError(line_no, e.what());
  }
  return inst;
}

std::string format_graph_control(const GraphControlInstance& inst) {
  std::ostringstream os;
  os << "t " << to_string(inst.kind) << '\n';
  if (is_directed(inst.kind)) {
    os << "p " << inst.digraph.size() << '\n';
    for (auto [u, v] : inst.digraph.arcs()) os << "a " << u + 1 << ' ' << v + 1 << '\n';
  } else {
    os << "p " << inst.graph.size() << '\n';
    for (auto [u, v] : inst.graph.edges()) os << "e " << u + 1 << ' ' << v + 1 << '\n';
  }
  auto ids = [&](char tag, const std::vector<int>& vs) {
    if (vs.empty()) return;
    os << tag;
    for (int v : vs) os << ' ' << v + 1;
    os << '\n';
  };
  ids('b', inst.base);
  ids('s', inst.selectable);
  for (auto [u, v] : inst.addable_arcs) os << "B " << u + 1 << ' ' << v + 1 << '\n';
  os << "k " << inst.limit << '\n';
  if (inst.kind == GraphControlKind::gnd) {
    os << "l " << inst.ell << '\n';
  } else {
    os << "v " << inst.target + 1 << '\n';
  }
  return os.str();
}

}  // namespace hardctl
