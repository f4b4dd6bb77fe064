#include "hardctl/ordering.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>

#include "hardctl/error.hpp"

namespace hardctl {

namespace {

inline int lowest(std::uint64_t m) { return std::countr_zero(m); }

std::vector<int> bits_of(std::uint64_t m) {
  std::vector<int> out;
  while (m) {
    out.push_back(lowest(m));
    m &= m - 1;
  }
  return out;
}

}  // namespace

LinearOrdering::LinearOrdering(int n, OrderingLimits limits)
    : n_(n), limits_(limits), w_(static_cast<std::size_t>(n) * n, 0), out_(n, 0), in_(n, 0) {
  if (n < 0 || n > kMaxItems) {
    throw ResourceLimit("linear ordering supports at most 64 items, got " + std::to_string(n));
  }
}

std::uint64_t LinearOrdering::all() const noexcept {
  return n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
}

void LinearOrdering::add_arc(int from, int to, std::int64_t w) {
  if (from == to || from < 0 || to < 0 || from >= n_ || to >= n_) {
    throw InvalidInput("bad ordering arc");
  }
  cache_.clear();
  w_[idx(from, to)] += w;
  if (w_[idx(from, to)] > 0) {
    out_[from] |= std::uint64_t{1} << to;
    in_[to] |= std::uint64_t{1} << from;
  } else {
    out_[from] &= ~(std::uint64_t{1} << to);
    in_[to] &= ~(std::uint64_t{1} << from);
  }
}

std::int64_t LinearOrdering::cost(std::span<const int> order) const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      // order[i] is above order[j]; arc order[j] -> order[i] is backward
      total += w_[idx(order[j], order[i])];
    }
  }
  return total;
}

std::int64_t LinearOrdering::weight_between(std::uint64_t from, std::uint64_t to) const {
  std::int64_t total = 0;
  for (std::uint64_t f = from; f; f &= f - 1) {
    int a = lowest(f);
    for (std::uint64_t t = out_[a] & to; t; t &= t - 1) total += w_[idx(a, lowest(t))];
  }
  return total;
}

std::vector<std::uint64_t> LinearOrdering::components(std::uint64_t mask) const {
  // forward and backward closure per vertex, bitset style
  std::vector<std::uint64_t> fwd(n_, 0), bwd(n_, 0);
  for (int v : bits_of(mask)) {
    std::uint64_t seen = std::uint64_t{1} << v, frontier = seen;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= out_[lowest(f)];
      next &= mask & ~seen;
      seen |= next;
      frontier = next;
    }
    fwd[v] = seen;
    seen = frontier = std::uint64_t{1} << v;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= in_[lowest(f)];
      next &= mask & ~seen;
      seen |= next;
      frontier = next;
    }
    bwd[v] = seen;
  }
  std::vector<std::uint64_t> comps;
  std::uint64_t left = mask;
  while (left) {
    int v = lowest(left);
    std::uint64_t c = fwd[v] & bwd[v];
    comps.push_back(c);
    left &= ~c;
  }
  // topological order: repeatedly take the component (smallest min-vertex)
  // with no positive arc entering from the remaining ones
  std::vector<std::uint64_t> ordered;
  std::vector<bool> used(comps.size(), false);
  std::uint64_t remaining = mask;
  for (std::size_t round = 0; round < comps.size(); ++round) {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (used[i]) continue;
      std::uint64_t others = remaining & ~comps[i];
      bool entered = false;
      for (std::uint64_t f = comps[i]; f && !entered; f &= f - 1) entered = (in_[lowest(f)] & others) != 0;
      if (!entered) {
        used[i] = true;
        ordered.push_back(comps[i]);
        remaining &= ~comps[i];
        break;
      }
    }
  }
  return ordered;
}

std::int64_t LinearOrdering::optimum(std::uint64_t mask) const {
  std::int64_t total = 0;
  for (std::uint64_t comp : components(mask)) total += solve_component(comp);
  return total;
}

std::int64_t LinearOrdering::optimum_with_first(int v, std::uint64_t mask) const {
  std::uint64_t bit = std::uint64_t{1} << v;
  if (!(mask & bit)) throw InvalidInput("item not in ordering mask");
  std::uint64_t rest = mask & ~bit;
  return weight_between(rest, bit) + optimum(rest);
}

bool LinearOrdering::can_be_first(int v, std::uint64_t mask) const {
  std::uint64_t bit = std::uint64_t{1} << v;
  std::uint64_t rest = mask & ~bit;
  // A positive arc into v from outside its component is backward whenever v
  // is on top, and no component-wise optimum pays for it. Otherwise v can be
  // hoisted above the upstream components without turning any cross arc.
  for (std::uint64_t comp : components(mask)) {
    if (!(comp & bit)) continue;
    if (in_[v] & rest & ~comp) return false;
    std::uint64_t inner_rest = comp & ~bit;
    return weight_between(inner_rest, bit) + optimum(inner_rest) == solve_component(comp);
  }
  return false;
}

std::vector<int> LinearOrdering::optimal_firsts(std::uint64_t mask) const {
  std::vector<int> out;
  for (int v : bits_of(mask)) {
    if (can_be_first(v, mask)) out.push_back(v);
  }
  return out;
}

std::vector<int> LinearOrdering::lex_min_optimal_order(std::uint64_t mask) const {
  std::vector<int> order;
  std::uint64_t rest = mask;
  while (rest) {
    int chosen = -1;
    for (int v : bits_of(rest)) {
      if (can_be_first(v, rest)) {
        chosen = v;
        break;
      }
    }
    if (chosen < 0) throw InvariantViolation("no optimal continuation in lex-min ordering");
    order.push_back(chosen);
    rest &= ~(std::uint64_t{1} << chosen);
  }
  return order;
}

std::int64_t LinearOrdering::solve_component(std::uint64_t comp) const {
  std::vector<int> items = bits_of(comp);
  if (items.size() <= 1) return 0;
  if (auto it = cache_.find(comp); it != cache_.end()) return it->second;
  std::int64_t v = static_cast<int>(items.size()) <= limits_.dp_max_component ? solve_dp(items)
                                                                               : solve_hitting_set(items);
  cache_.emplace(comp, v);
  return v;
}

std::int64_t LinearOrdering::solve_dp(const std::vector<int>& items) const {
  const int s = static_cast<int>(items.size());
  // local out-arc masks and weights
  std::vector<std::uint32_t> lout(s, 0);
  std::vector<std::int64_t> lw(static_cast<std::size_t>(s) * s, 0);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (i == j) continue;
      std::int64_t w = w_[idx(items[i], items[j])];
      if (w > 0) {
        lout[i] |= 1u << j;
        lw[static_cast<std::size_t>(i) * s + j] = w;
      }
    }
  }
  const std::uint32_t full = s == 32 ? ~0u : ((1u << s) - 1);
  std::vector<std::int64_t> best(static_cast<std::size_t>(full) + 1,
                                 std::numeric_limits<std::int64_t>::max());
  best[0] = 0;
  for (std::uint32_t t = 1; t <= full && t != 0; ++t) {
    std::int64_t b = std::numeric_limits<std::int64_t>::max();
    for (std::uint32_t rem = t; rem; rem &= rem - 1) {
      int c = std::countr_zero(rem);
      std::uint32_t above = t & ~(1u << c);
      std::int64_t add = 0;
      for (std::uint32_t f = lout[c] & above; f; f &= f - 1) {
        add += lw[static_cast<std::size_t>(c) * s + std::countr_zero(f)];
      }
      b = std::min(b, best[above] + add);
    }
    best[t] = b;
    if (t == full) break;
  }
  return best[full];
}

namespace {

/// Exact minimum-weight hitting set over a growing family of cycles.
class CycleHittingSet {
 public:
  CycleHittingSet(std::vector<std::int64_t> weights, std::uint64_t max_nodes, std::uint64_t& nodes)
      : w_(std::move(weights)), words_((w_.size() + 63) / 64), max_nodes_(max_nodes), nodes_(nodes) {}

  using Bits = std::vector<std::uint64_t>;

  Bits empty() const { return Bits(words_, 0); }
  static bool test(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1U; }
  static void set(Bits& b, int i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
  static void reset(Bits& b, int i) { b[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  /// Returns false if the cycle was already known.
  bool add_cycle(std::vector<int> arcs) {
    std::sort(arcs.begin(), arcs.end());
    if (!known_.insert(arcs).second) return false;
    cycles_.push_back(std::move(arcs));
    return true;
  }

  /// Optimal hitting set, given an incumbent that hits every cycle.
  std::int64_t solve(Bits& chosen_out, const Bits& incumbent) {
    best_ = 0;
    for (std::size_t a = 0; a < w_.size(); ++a) {
      if (test(incumbent, static_cast<int>(a))) best_ += w_[a];
    }
    best_set_ = incumbent;
    Bits chosen = empty(), forbidden = empty();
    rec(chosen, forbidden, 0);
    chosen_out = best_set_;
    return best_;
  }

 private:
  bool hit(const std::vector<int>& c, const Bits& chosen) const {
    for (int a : c) {
      if (test(chosen, a)) return true;
    }
    return false;
  }

  void rec(Bits& chosen, Bits& forbidden, std::int64_t cost) {
    if (++nodes_ > max_nodes_) throw ResourceLimit("ordering search exceeded its node budget");
    // branch cycle: unhit with fewest allowed arcs; lower bound from a
    // greedy packing of arc-disjoint unhit cycles
    int pick = -1;
    std::size_t pick_allowed = ~std::size_t{0};
    std::int64_t bound = 0;
    Bits used = empty();
    for (std::size_t ci = 0; ci < cycles_.size(); ++ci) {
      const auto& c = cycles_[ci];
      if (hit(c, chosen)) continue;
      std::size_t allowed = 0;
      std::int64_t cheapest = std::numeric_limits<std::int64_t>::max();
      bool disjoint = true;
      for (int a : c) {
        if (test(forbidden, a)) continue;
        ++allowed;
        cheapest = std::min(cheapest, w_[a]);
        if (test(used, a)) disjoint = false;
      }
      if (allowed == 0) return;
      if (allowed < pick_allowed) {
        pick_allowed = allowed;
        pick = static_cast<int>(ci);
      }
      if (disjoint) {
        bound += cheapest;
        for (int a : c) {
          if (!test(forbidden, a)) set(used, a);
        }
      }
    }
    if (pick < 0) {
      if (cost < best_) {
        best_ = cost;
        best_set_ = chosen;
      }
      return;
    }
    if (cost + bound >= best_) return;
    std::vector<int> branch;
    for (int a : cycles_[pick]) {
      if (!test(forbidden, a)) branch.push_back(a);
    }
    // heavier arcs first: they tend to be cheaper to avoid, so forbidding
    // them early tightens later branches
    std::stable_sort(branch.begin(), branch.end(), [&](int x, int y) { return w_[x] < w_[y]; });
    std::vector<int> forbidden_here;
    for (int a : branch) {
      set(chosen, a);
      rec(chosen, forbidden, cost + w_[a]);
      reset(chosen, a);
      set(forbidden, a);
      forbidden_here.push_back(a);
    }
    for (int a : forbidden_here) reset(forbidden, a);
  }

  std::vector<std::int64_t> w_;
  std::size_t words_;
  std::uint64_t max_nodes_;
  std::uint64_t& nodes_;
  std::vector<std::vector<int>> cycles_;
  std::set<std::vector<int>> known_;
  std::int64_t best_ = 0;
  Bits best_set_;
};

}  // namespace

// Implicit hitting set: the optimum hitting set of a subset of the cycles is
// a lower bound; once removing it leaves the component acyclic it is optimal.
std::int64_t LinearOrdering::solve_hitting_set(const std::vector<int>& items) const {
  const int s = static_cast<int>(items.size());
  // net arcs; the smaller weight of an opposite pair is paid either way
  std::int64_t unavoidable = 0;
  std::vector<int> from, to;
  std::vector<std::int64_t> weight;
  std::vector<int> arc_id(static_cast<std::size_t>(s) * s, -1);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (i == j) continue;
      std::int64_t a = w_[idx(items[i], items[j])], b = w_[idx(items[j], items[i])];
      if (a > 0 && b > 0 && i < j) unavoidable += std::min(a, b);
      std::int64_t net = b > 0 ? a - b : a;
      if (net > 0) {
        arc_id[static_cast<std::size_t>(i) * s + j] = static_cast<int>(from.size());
        from.push_back(i);
        to.push_back(j);
        weight.push_back(net);
      }
    }
  }
  const int na = static_cast<int>(from.size());
  std::vector<std::uint64_t> out(s, 0);
  for (int a = 0; a < na; ++a) out[from[a]] |= std::uint64_t{1} << to[a];

  using Bits = CycleHittingSet::Bits;
  auto removed_out = [&](const Bits& removed) {
    std::vector<std::uint64_t> o = out;
    for (int a = 0; a < na; ++a) {
      if (CycleHittingSet::test(removed, a)) o[from[a]] &= ~(std::uint64_t{1} << to[a]);
    }
    return o;
  };
  auto acyclic = [&](const std::vector<std::uint64_t>& o) {
    std::vector<int> indeg(s, 0);
    for (int i = 0; i < s; ++i) {
      for (std::uint64_t f = o[i]; f; f &= f - 1) ++indeg[lowest(f)];
    }
    std::vector<int> stack;
    for (int i = 0; i < s; ++i) {
      if (indeg[i] == 0) stack.push_back(i);
    }
    int seen = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++seen;
      for (std::uint64_t f = o[v]; f; f &= f - 1) {
        if (--indeg[lowest(f)] == 0) stack.push_back(lowest(f));
      }
    }
    return seen == s;
  };
  // shortest path src -> dst in o, as arc ids; empty if none
  auto path = [&](const std::vector<std::uint64_t>& o, int src, int dst) {
    std::vector<int> parent(s, -1);
    std::uint64_t seen = std::uint64_t{1} << src, frontier = seen;
    while (frontier && !(seen >> dst & 1U)) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) {
        int v = lowest(f);
        for (std::uint64_t g = o[v] & ~seen & ~next; g; g &= g - 1) {
          parent[lowest(g)] = v;
          next |= g & -g;
        }
      }
      seen |= next;
      frontier = next;
    }
    std::vector<int> arcs;
    if (!(seen >> dst & 1U)) return arcs;
    for (int v = dst; v != src; v = parent[v]) arcs.push_back(arc_id[static_cast<std::size_t>(parent[v]) * s + v]);
    return arcs;
  };

  // incumbent: greedy order (least weight entering from the unplaced items)
  Bits incumbent((na + 63) / 64, 0);
  {
    std::uint64_t placed = 0;
    const std::uint64_t full = s == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << s) - 1);
    std::vector<int> pos(s, 0);
    for (int step = 0; step < s; ++step) {
      std::uint64_t rest = full & ~placed;
      int pick = -1;
      std::int64_t pick_in = 0;
      for (std::uint64_t f = rest; f; f &= f - 1) {
        int c = lowest(f);
        std::int64_t in = 0;
        for (int a = 0; a < na; ++a) {
          if (to[a] == c && (rest >> from[a] & 1U)) in += weight[a];
        }
        if (pick < 0 || in < pick_in) {
          pick = c;
          pick_in = in;
        }
      }
      pos[pick] = step;
      placed |= std::uint64_t{1} << pick;
    }
    for (int a = 0; a < na; ++a) {
      if (pos[to[a]] < pos[from[a]]) CycleHittingSet::set(incumbent, a);
    }
  }

  std::uint64_t nodes = 0;
  CycleHittingSet hs(weight, limits_.max_search_nodes, nodes);
  Bits chosen;
  Bits none((na + 63) / 64, 0);
  auto harvest = [&](const Bits& removed) {
    auto o = removed_out(removed);
    int added = 0;
    for (int a = 0; a < na; ++a) {
      if (CycleHittingSet::test(removed, a)) continue;
      auto p = path(o, to[a], from[a]);
      if (p.empty()) continue;
      p.push_back(a);
      added += hs.add_cycle(std::move(p)) ? 1 : 0;
    }
    return added;
  };
  harvest(none);
  while (true) {
    std::int64_t cost = hs.solve(chosen, incumbent);
    if (acyclic(removed_out(chosen))) return unavoidable + cost;
    if (harvest(chosen) == 0) throw InvariantViolation("cycle generation stalled");
  }
}

}  // namespace hardctl
