#pragma once

// Brute-force references for desk-scale instances. Nothing here shares code
// with the exact solver: scenarios are re-tabulated into plain bitmasks and
// solved by a different recursion.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "atdp/model.hpp"

namespace atdp {

struct Literal {
  enum class Kind { X, Y };
  Kind kind = Kind::X;
  unsigned var = 1;  // 1-based
  bool negated = false;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

/// Prenex CNF formula  Ex1 Ay1 Ex2 Ay2 ... Exk Ayk . c1 & ... & cn.
struct QbfFormula {
  unsigned k = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const QbfFormula&, const QbfFormula&) = default;
};

/// Sorts literals and removes repeats inside every clause; throws
/// std::invalid_argument on empty clauses or variables outside 1..k.
QbfFormula normalize(QbfFormula q);

std::string to_string(const Literal& l);

struct NamedSet {
  std::string name;
  std::vector<std::string> members;

  friend bool operator==(const NamedSet&, const NamedSet&) = default;
};

struct SetCoverInstance {
  std::vector<std::string> elements;
  std::vector<NamedSet> sets;

  friend bool operator==(const SetCoverInstance&, const SetCoverInstance&) = default;
};

/// Empty when valid: names unique, members declared, union covers everything.
std::vector<std::string> validate_cover(const SetCoverInstance& sc);

struct OracleLimits {
  std::size_t max_inputs = 6;
  std::size_t max_functions = 16;
};

/// Minimum worst-case number of distinct inputs that forces a verdict, or
/// nullopt when no sequence within |I| distinct inputs does.
/// Throws SizeGuardExceeded above the limits.
std::optional<unsigned> min_depth(const Scenario& s, OracleLimits limits = {});

bool qbf_eval(const QbfFormula& q);

/// Throws SizeGuardExceeded above `max_sets`, std::invalid_argument when
/// some element is uncoverable.
std::size_t min_set_cover(const SetCoverInstance& sc, std::size_t max_sets = 12);

}  // namespace atdp
