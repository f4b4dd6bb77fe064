#include "hardctl/graph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "hardctl/error.hpp"
#include "text_util.hpp"

namespace hardctl {

VertexMask full_mask(int n) { return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1; }

std::vector<int> mask_to_list(VertexMask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

VertexMask list_to_mask(const std::vector<int>& vs) {
  VertexMask m = 0;
  for (int v : vs) m |= bit(v);
  return m;
}

// ---------------------------------------------------------------- Graph

Graph::Graph(int n) : n_(n), adj_(n, 0) {
  if (n < 0 || n > kMaxVertices) throw InvalidInput("graph size must be in 0..64");
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidInput("edge endpoint out of range");
  if (u == v) throw InvalidInput("self-loops are not allowed");
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
}

int Graph::num_edges() const {
  int twice = 0;
  for (VertexMask a : adj_) twice += std::popcount(a);
  return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v : mask_to_list(adj_[u] & ~full_mask(u + 1))) out.emplace_back(u, v);
  }
  return out;
}

int Graph::add_vertex() {
  if (n_ == kMaxVertices) throw ResourceLimit("graph exceeds 64 vertices");
  adj_.push_back(0);
  return n_++;
}

// -------------------------------------------------------------- Digraph

Digraph::Digraph(int n) : n_(n), out_(n, 0) {
  if (n < 0 || n > kMaxVertices) throw InvalidInput("digraph size must be in 0..64");
}

void Digraph::add_arc(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidInput("arc endpoint out of range");
  if (u == v) throw InvalidInput("digraph must be irreflexive");
  if (has_arc(v, u)) throw InvalidInput("digraph must be antisymmetric");
  out_[u] |= bit(v);
}

VertexMask Digraph::in(int v) const {
  VertexMask m = 0;
  for (int u = 0; u < n_; ++u) {
    if (has_arc(u, v)) m |= bit(u);
  }
  return m;
}

int Digraph::num_arcs() const {
  int n = 0;
  for (VertexMask a : out_) n += std::popcount(a);
  return n;
}

std::vector<std::pair<int, int>> Digraph::arcs() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v : mask_to_list(out_[u])) out.emplace_back(u, v);
  }
  return out;
}

int Digraph::add_vertex() {
  if (n_ == kMaxVertices) throw ResourceLimit("digraph exceeds 64 vertices");
  out_.push_back(0);
  return n_++;
}

// ------------------------------------------------------------ operators

Graph complement(const Graph& g) {
  Graph h(g.size());
  for (int u = 0; u < g.size(); ++u) {
    for (int v = u + 1; v < g.size(); ++v) {
      if (!g.has_edge(u, v)) h.add_edge(u, v);
    }
  }
  return h;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  if (a.size() + b.size() > Graph::kMaxVertices) throw ResourceLimit("graph exceeds 64 vertices");
  Graph h(a.size() + b.size());
  for (auto [u, v] : a.edges()) h.add_edge(u, v);
  for (auto [u, v] : b.edges()) h.add_edge(a.size() + u, a.size() + v);
  return h;
}

Graph join(const Graph& a, const Graph& b) {
  Graph h = disjoint_union(a, b);
  for (int u = 0; u < a.size(); ++u) {
    for (int v = 0; v < b.size(); ++v) h.add_edge(u, a.size() + v);
  }
  return h;
}

Graph induced(const Graph& g, VertexMask keep) {
  auto kept = mask_to_list(keep & full_mask(g.size()));
  std::vector<int> pos(g.size(), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) pos[kept[i]] = static_cast<int>(i);
  Graph h(static_cast<int>(kept.size()));
  for (auto [u, v] : g.edges()) {
    if (pos[u] >= 0 && pos[v] >= 0) h.add_edge(pos[u], pos[v]);
  }
  return h;
}

// -------------------------------------------------------------- file I/O

namespace {

template <class G>
G parse_any(std::string_view text, char arc_tag, const char* what) {
  G g;
  bool have_header = false;
  int line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto line = detail::trim(raw);
    if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
    auto tok = detail::split_ws(line);
    if (tok[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 2) throw ParseError(line_no, "expected 'p <n>'");
      auto n = detail::to_int(tok[1], line_no);
      if (n < 0 || n > 64) throw ParseError(line_no, "vertex count must be in 0..64");
      g = G(static_cast<int>(n));
      have_header = true;
    } else if (tok[0].size() == 1 && tok[0][0] == arc_tag) {
      if (!have_header) throw ParseError(line_no, "edge before header");
      if (tok.size() != 3) throw ParseError(line_no, std::string("expected '") + arc_tag + " u v'");
      auto u = detail::to_int(tok[1], line_no) - 1;
      auto v = detail::to_int(tok[2], line_no) - 1;
      try {
        if constexpr (std::is_same_v<G, Graph>) {
          g.add_edge(static_cast<int>(u), static_cast<int>(v));
        } else {
          g.add_arc(static_cast<int>(u), static_cast<int>(v));
        }
      } catch (const InvalidInput& e) {
        throw ParseError(line_no, e.what());
      }
    } else {
      throw ParseError(line_no, std::string("unexpected line in ") + what + " file");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p <n>' header");
  return g;
}

}  // namespace

Graph parse_graph(std::string_view text) { return parse_any<Graph>(text, 'e', "graph"); }
Digraph parse_digraph(std::string_view text) { return parse_any<Digraph>(text, 'a', "digraph"); }

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << "p " << g.size() << '\n';
  for (auto [u, v] : g.edges()) os << "e " << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

std::string format_digraph(const Digraph& d) {
  std::ostringstream os;
  os << "p " << d.size() << '\n';
  for (auto [u, v] : d.arcs()) os << "a " << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

// -------------------------------------------------------- exact searches

namespace {

class MisSearch {
 public:
  MisSearch(const Graph& g, const GraphLimits& limits) : g_(g), limits_(limits) {}

  VertexMask run(VertexMask present) {
    present &= full_mask(g_.size());
    if (std::popcount(present) > limits_.max_vertices) {
      throw ResourceLimit("independent-set search limited to " + std::to_string(limits_.max_vertices) +
                          " vertices");
    }
    best_ = 0;
    best_size_ = -1;
    rec(present, 0, 0);
    return best_;
  }

 private:
  void rec(VertexMask p, VertexMask cur, int cur_size) {
    if (++nodes_ > limits_.max_nodes) throw ResourceLimit("independent-set search exceeded its node budget");
    if (p == 0) {
      if (cur_size > best_size_) {
        best_size_ = cur_size;
        best_ = cur;
      }
      return;
    }
    if (cur_size + std::popcount(p) <= best_size_) return;
    int vmin = -1, dmin = 65, vmax = -1, dmax = -1;
    for (VertexMask rest = p; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      int d = std::popcount(g_.neighbours(v) & p);
      if (d < dmin) dmin = d, vmin = v;
      if (d > dmax) dmax = d, vmax = v;
    }
    // some maximum independent set contains any vertex of degree <= 1
    if (dmin <= 1) {
      rec(p & ~(bit(vmin) | g_.neighbours(vmin)), cur | bit(vmin), cur_size + 1);
      return;
    }
    rec(p & ~(bit(vmax) | g_.neighbours(vmax)), cur | bit(vmax), cur_size + 1);
    rec(p & ~bit(vmax), cur, cur_size);
  }

  const Graph& g_;
  GraphLimits limits_;
  std::uint64_t nodes_ = 0;
  VertexMask best_ = 0;
  int best_size_ = -1;
};

void check_vertex(int v, VertexMask present, int n) {
  if (v < 0 || v >= n || !(present & bit(v))) throw InvalidInput("queried vertex is not present");
}

}  // namespace

VertexMask max_independent_set(const Graph& g, VertexMask present, const GraphLimits& limits) {
  return MisSearch(g, limits).run(present);
}

VertexSetResult min_vertex_cover(const Graph& g, const GraphLimits& limits) {
  VertexMask all = full_mask(g.size());
  VertexMask cover = all & ~max_independent_set(g, all, limits);
  return {std::popcount(cover), mask_to_list(cover)};
}

int min_vertex_cover_size(const Graph& g, VertexMask present, const GraphLimits& limits) {
  present &= full_mask(g.size());
  return std::popcount(present) - std::popcount(max_independent_set(g, present, limits));
}

bool vc_membership(const Graph& g, int v, VertexMask present, const GraphLimits& limits) {
  check_vertex(v, present, g.size());
  // a cover forced to contain v is v plus a minimum cover of G - v
  return 1 + min_vertex_cover_size(g, present & ~bit(v), limits) == min_vertex_cover_size(g, present, limits);
}

bool vc_membership(const Graph& g, int v, const GraphLimits& limits) {
  return vc_membership(g, v, full_mask(g.size()), limits);
}

Independence independence(const Graph& g, int v, VertexMask present, const GraphLimits& limits) {
  check_vertex(v, present, g.size());
  Independence r;
  r.alpha = std::popcount(max_independent_set(g, present, limits));
  r.alpha_v = 1 + std::popcount(max_independent_set(g, present & ~(bit(v) | g.neighbours(v)), limits));
  return r;
}

Independence independence(const Graph& g, int v, const GraphLimits& limits) {
  return independence(g, v, full_mask(g.size()), limits);
}

bool is_member(const Graph& g, int v, VertexMask present, const GraphLimits& limits) {
  auto r = independence(g, v, present, limits);
  return r.alpha == r.alpha_v;
}

void add_unit_arcs(LinearOrdering& lo, const std::vector<std::pair<int, int>>& arcs) {
  for (auto [u, v] : arcs) lo.add_arc(u, v, 1);
}

LinearOrdering fas_ordering(const Digraph& d, const GraphLimits& limits) {
  if (d.size() > limits.max_fas_vertices) {
    throw ResourceLimit("feedback-arc-set search limited to " + std::to_string(limits.max_fas_vertices) +
                        " vertices");
  }
  LinearOrdering lo(d.size(), limits.ordering);
  add_unit_arcs(lo, d.arcs());
  return lo;
}

FasResult min_feedback_arc_set(const Digraph& d, const GraphLimits& limits) {
  LinearOrdering lo = fas_ordering(d, limits);
  return {static_cast<int>(lo.optimum()), lo.lex_min_optimal_order(lo.all())};
}

int min_feedback_arc_set_size(const Digraph& d, VertexMask present, const GraphLimits& limits) {
  return static_cast<int>(fas_ordering(d, limits).optimum(present & full_mask(d.size())));
}

bool fas_top_membership(const Digraph& d, int v, VertexMask present, const GraphLimits& limits) {
  check_vertex(v, present, d.size());
  return fas_ordering(d, limits).can_be_first(v, present & full_mask(d.size()));
}

bool fas_top_membership(const Digraph& d, int v, const GraphLimits& limits) {
  return fas_top_membership(d, v, full_mask(d.size()), limits);
}

namespace {

bool clique_rec(const Graph& g, VertexMask p, int need) {
  if (need == 0) return true;
  while (p && std::popcount(p) >= need) {
    int v = std::countr_zero(p);
    p &= p - 1;
    if (clique_rec(g, p & g.neighbours(v), need - 1)) return true;
  }
  return false;
}

}  // namespace

bool has_clique(const Graph& g, int size, VertexMask present) {
  return clique_rec(g, present & full_mask(g.size()), size);
}

}  // namespace hardctl
