#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "atdp/model.hpp"

namespace atdp {

struct RankedInput {
  std::string input;
  /// Lower is better. Heuristic mode: worst-case ratio in [0, 0.5].
  /// Exact mode: worst-case number of further tests; +inf when infeasible.
  double score = 0.0;
  /// The score does not rest on any depth or budget cutoff.
  bool exact = false;

  friend bool operator==(const RankedInput&, const RankedInput&) = default;
};

struct Advice {
  std::vector<RankedInput> ranked;
  std::size_t depth_used = 0;
  std::uint64_t nodes_expanded = 0;
  /// Some positions were scored heuristically because the budget ran out.
  bool budget_exhausted = false;
  /// Exact advice was requested but refused by the size guard.
  bool fallback = false;
};

inline constexpr double kInfeasibleScore = std::numeric_limits<double>::infinity();

/// min(|cs & E|, |cs \ E|) / |cs|: 0 once a verdict is forced, 0.5 at balance.
/// Throws std::invalid_argument on an empty set.
double heuristic_value(const Instance& s, const IndexSet& cs);
double heuristic_value(const Instance& s, const std::vector<std::string>& cs);

/// Minimax to `depth` over the unused inputs; cutoff positions are valued by
/// heuristic_value. Every unused input is ranked (score ascending, ties by
/// input order). Once `budget` nodes have been expanded the remaining
/// positions are valued heuristically. Throws std::invalid_argument when cs is
/// empty, depth is 0 or every input is used.
Advice advise(const Instance& s, const IndexSet& cs, const IndexSet& used, unsigned depth,
              std::uint64_t budget = std::numeric_limits<std::uint64_t>::max());

}  // namespace atdp
