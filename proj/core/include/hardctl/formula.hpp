#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hardctl {

struct Literal {
  int var = 0;  // 0-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

/// 3CNF over variables 0..num_vars-1.
struct Cnf3 {
  int num_vars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const Cnf3&, const Cnf3&) = default;
};

/// Exists x, not exists y: phi(x, y). Variables 0..n-1 form the x-block,
/// n..2n-1 the y-block.
struct Qbf2 {
  int n = 0;
  std::vector<Clause> clauses;

  int x(int i) const { return i; }
  int y(int i) const { return n + i; }
  bool is_y(int var) const { return var >= n; }
  /// Number of y-literal occurrences.
  int y_occurrences() const;
  Cnf3 matrix() const { return {2 * n, clauses}; }

  friend bool operator==(const Qbf2&, const Qbf2&) = default;
};

struct FormulaLimits {
  int max_sat_vars = 24;
  int max_qbf_block = 12;
};

/// A satisfying assignment (indexed by variable), if any.
std::optional<std::vector<bool>> sat3_decide(const Cnf3& f, const FormulaLimits& limits = {});

/// An x-assignment making phi(x, .) unsatisfiable, if any.
std::optional<std::vector<bool>> qsat2_decide(const Qbf2& f, const FormulaLimits& limits = {});

/// Adds dummy variables occurring in no clause to both blocks until each
/// block has at least `min_n` variables.
Qbf2 pad_qbf2(const Qbf2& f, int min_n);

void validate(const Cnf3& f);
void validate(const Qbf2& f);

/// DIMACS `p cnf V C` with exactly three literals per clause.
Cnf3 parse_cnf3(std::string_view text);
std::string format_cnf3(const Cnf3& f);

/// `p qcnf V C`, `x ids 0`, `y ids 0`, clause lines. Blocks are renumbered
/// so x comes first; an unequal block is padded with unused variables.
Qbf2 parse_qbf2(std::string_view text);
std::string format_qbf2(const Qbf2& f);

}  // namespace hardctl
