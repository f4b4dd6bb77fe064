#include "hardctl/formula.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

#include "hardctl/error.hpp"
#include "text_util.hpp"

namespace hardctl {

int Qbf2::y_occurrences() const {
  int k = 0;
  for (const Clause& c : clauses) {
    for (const Literal& l : c) k += is_y(l.var) ? 1 : 0;
  }
  return k;
}

void validate(const Cnf3& f) {
  if (f.num_vars < 0) throw InvalidInput("negative variable count");
  for (const Clause& c : f.clauses) {
    for (const Literal& l : c) {
      if (l.var < 0 || l.var >= f.num_vars) throw InvalidInput("literal refers to an undeclared variable");
    }
  }
}

void validate(const Qbf2& f) {
  if (f.n < 0) throw InvalidInput("negative block size");
  validate(f.matrix());
}

namespace {

// Clause as bitmasks: satisfied by assignment a iff (a & pos) | (~a & neg).
struct MaskClause {
  std::uint64_t pos = 0, neg = 0;
};

std::vector<MaskClause> to_masks(const std::vector<Clause>& clauses) {
  std::vector<MaskClause> out;
  for (const Clause& c : clauses) {
    MaskClause mc;
    for (const Literal& l : c) (l.negated ? mc.neg : mc.pos) |= std::uint64_t{1} << l.var;
    out.push_back(mc);
  }
  return out;
}

bool satisfies(const std::vector<MaskClause>& cs, std::uint64_t a) {
  for (const MaskClause& c : cs) {
    if (!((a & c.pos) | (~a & c.neg))) return false;
  }
  return true;
}

std::vector<bool> unpack(std::uint64_t a, int n) {
  std::vector<bool> v(n);
  for (int i = 0; i < n; ++i) v[i] = (a >> i) & 1U;
  return v;
}

}  // namespace

std::optional<std::vector<bool>> sat3_decide(const Cnf3& f, const FormulaLimits& limits) {
  validate(f);
  if (f.num_vars > limits.max_sat_vars) {
    throw ResourceLimit("satisfiability check limited to " + std::to_string(limits.max_sat_vars) + " variables");
  }
  auto cs = to_masks(f.clauses);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars); ++a) {
    if (satisfies(cs, a)) return unpack(a, f.num_vars);
  }
  return std::nullopt;
}

std::optional<std::vector<bool>> qsat2_decide(const Qbf2& f, const FormulaLimits& limits) {
  validate(f);
  if (f.n > limits.max_qbf_block) {
    throw ResourceLimit("QSAT2 check limited to " + std::to_string(limits.max_qbf_block) + " variables per block");
  }
  auto cs = to_masks(f.clauses);
  const std::uint64_t block = std::uint64_t{1} << f.n;
  for (std::uint64_t x = 0; x < block; ++x) {
    bool sat = false;
    for (std::uint64_t y = 0; y < block && !sat; ++y) sat = satisfies(cs, x | (y << f.n));
    if (!sat) return unpack(x, f.n);
  }
  return std::nullopt;
}

Qbf2 pad_qbf2(const Qbf2& f, int min_n) {
  validate(f);
  if (f.n >= min_n) return f;
  Qbf2 g;
  g.n = min_n;
  for (Clause c : f.clauses) {
    for (Literal& l : c) {
      if (f.is_y(l.var)) l.var += min_n - f.n;
    }
    g.clauses.push_back(c);
  }
  return g;
}

// ---------------------------------------------------------------- DIMACS

namespace {

Literal parse_literal(long long x, int num_vars, int line_no) {
  if (x == 0 || x > num_vars || -x > num_vars) throw ParseError(line_no, "literal out of range");
  return {static_cast<int>((x > 0 ? x : -x) - 1), x < 0};
}

std::string literal_text(const Literal& l) { return (l.negated ? "-" : "") + std::to_string(l.var + 1); }

struct RawDimacs {
  int vars = 0;
  std::size_t declared_clauses = 0;
  std::vector<long long> xs, ys;
  std::vector<std::pair<std::vector<long long>, int>> clauses;  // literals, line
  int last_line = 0;
};

RawDimacs read_dimacs(std::string_view text, std::string_view kind) {
  RawDimacs r;
  bool header = false;
  int line_no = 0;
  std::vector<long long> pending;
  int pending_line = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto line = detail::trim(raw);
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    auto tok = detail::split_ws(line);
    if (tok[0] == "p") {
      if (header) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 4 || tok[1] != kind) throw ParseError(line_no, "expected 'p " + std::string(kind) + " V C'");
      r.vars = static_cast<int>(detail::to_int(tok[2], line_no));
      r.declared_clauses = static_cast<std::size_t>(detail::to_int(tok[3], line_no));
      if (r.vars < 0) throw ParseError(line_no, "negative variable count");
      header = true;
      continue;
    }
    if (!header) throw ParseError(line_no, "missing header");
    if (tok[0] == "x" || tok[0] == "y" || tok[0] == "e" || tok[0] == "a") {
      if (kind != "qcnf") throw ParseError(line_no, "quantifier line in a plain CNF file");
      auto& dst = (tok[0] == "x" || tok[0] == "e") ? r.xs : r.ys;
      if (tok.size() < 2 || tok.back() != "0") throw ParseError(line_no, "quantifier line must end in 0");
      for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
        auto v = detail::to_int(tok[i], line_no);
        if (v <= 0 || v > r.vars) throw ParseError(line_no, "quantified variable out of range");
        dst.push_back(v);
      }
      continue;
    }
    for (auto t : tok) {
      auto x = detail::to_int(t, line_no);
      if (pending.empty()) pending_line = line_no;
      if (x == 0) {
        r.clauses.emplace_back(pending, pending_line);
        pending.clear();
      } else {
        pending.push_back(x);
      }
    }
  }
  if (!header) throw ParseError(line_no, "missing header");
  if (!pending.empty()) throw ParseError(pending_line, "clause not terminated by 0");
  if (r.clauses.size() != r.declared_clauses) throw ParseError(line_no, "clause count differs from header");
  r.last_line = line_no;
  return r;
}

}  // namespace

Cnf3 parse_cnf3(std::string_view text) {
  RawDimacs r = read_dimacs(text, "cnf");
  Cnf3 f;
  f.num_vars = r.vars;
  for (auto& [lits, line] : r.clauses) {
    if (lits.size() != 3) throw ParseError(line, "clause must have exactly three literals");
    f.clauses.push_back({parse_literal(lits[0], r.vars, line), parse_literal(lits[1], r.vars, line),
                         parse_literal(lits[2], r.vars, line)});
  }
  return f;
}

std::string format_cnf3(const Cnf3& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const Clause& c : f.clauses) {
    os << literal_text(c[0]) << ' ' << literal_text(c[1]) << ' ' << literal_text(c[2]) << " 0\n";
  }
  return os.str();
}

Qbf2 parse_qbf2(std::string_view text) {
  RawDimacs r = read_dimacs(text, "qcnf");
  std::map<long long, int> x_id, y_id;
  for (auto v : r.xs) {
    if (x_id.count(v) || y_id.count(v)) throw ParseError(r.last_line, "variable quantified twice");
    x_id.emplace(v, static_cast<int>(x_id.size()));
  }
  for (auto v : r.ys) {
    if (x_id.count(v) || y_id.count(v)) throw ParseError(r.last_line, "variable quantified twice");
    y_id.emplace(v, static_cast<int>(y_id.size()));
  }
  Qbf2 f;
  f.n = static_cast<int>(std::max(x_id.size(), y_id.size()));
  for (auto& [lits, line] : r.clauses) {
    if (lits.size() != 3) throw ParseError(line, "clause must have exactly three literals");
    Clause c;
    for (int i = 0; i < 3; ++i) {
      long long v = lits[i] > 0 ? lits[i] : -lits[i];
      if (auto it = x_id.find(v); it != x_id.end()) {
        c[i] = {f.x(it->second), lits[i] < 0};
      } else if (auto jt = y_id.find(v); jt != y_id.end()) {
        c[i] = {f.y(jt->second), lits[i] < 0};
      } else {
        throw ParseError(line, "clause uses an unquantified variable");
      }
    }
    f.clauses.push_back(c);
  }
  return f;
}

std::string format_qbf2(const Qbf2& f) {
  std::ostringstream os;
  os << "p qcnf " << 2 * f.n << ' ' << f.clauses.size() << '\n';
  os << 'x';
  for (int i = 0; i < f.n; ++i) os << ' ' << f.x(i) + 1;
  os << " 0\ny";
  for (int i = 0; i < f.n; ++i) os << ' ' << f.y(i) + 1;
  os << " 0\n";
  for (const Clause& c : f.clauses) {
    os << literal_text(c[0]) << ' ' << literal_text(c[1]) << ' ' << literal_text(c[2]) << " 0\n";
  }
  return os.str();
}

}  // namespace hardctl
