#pragma once

// Exact decision and optimization of the worst-case number of adaptive tests.
//
// Two engines answer the same question:
//   * the backtracking machine (memoize = false) keeps only the current branch
//     (one input, one output and one consistent set per level) and so runs in
//     space polynomial in the instance, whatever k is;
//   * the memoized recursion (memoize = true) caches positions keyed by
//     (consistent set, used inputs, remaining depth).
// Both explore inputs and outputs in alphabet order and never repeat an input
// along a branch, so depth is capped at |I|.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "atdp/model.hpp"

namespace atdp {

enum class SearchMode {
  /// Verdicts are checked only once min(k, |I|) inputs have been applied.
  LiteralB1,
  /// Verdicts are also checked at every intermediate level.
  EarlyStop,
};

struct SolveConfig {
  SearchMode mode = SearchMode::EarlyStop;
  /// Inputs the strategy must apply first, in order, on every branch.
  std::vector<std::string> forced_prefix;
  /// Aborts the search with BudgetExhausted after this many expanded nodes.
  std::optional<std::uint64_t> node_budget;
  bool memoize = true;
  std::size_t max_memo_entries = std::size_t{1} << 20;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::size_t memo_entries = 0;
};

struct StrategyTree;

struct StrategyLeaf {
  Verdict verdict = Verdict::Undecided;
  std::vector<std::string> consistent;

  friend bool operator==(const StrategyLeaf&, const StrategyLeaf&) = default;
};

struct StrategyEdge;

struct StrategyBranch {
  std::string input;
  std::vector<StrategyEdge> edges;

  friend bool operator==(const StrategyBranch&, const StrategyBranch&);
};

/// Adaptive plan: branches apply an input and fan out on every producible
/// output; leaves carry the verdict and the surviving candidates.
struct StrategyTree {
  std::variant<StrategyLeaf, StrategyBranch> node;

  bool is_leaf() const { return std::holds_alternative<StrategyLeaf>(node); }
  const StrategyLeaf& leaf() const { return std::get<StrategyLeaf>(node); }
  const StrategyBranch& branch() const { return std::get<StrategyBranch>(node); }
  StrategyLeaf& leaf() { return std::get<StrategyLeaf>(node); }
  StrategyBranch& branch() { return std::get<StrategyBranch>(node); }

  /// Number of inputs on the longest root-leaf path.
  std::size_t depth() const;
  std::size_t leaf_count() const;

  friend bool operator==(const StrategyTree&, const StrategyTree&) = default;
};

struct StrategyEdge {
  std::string output;
  StrategyTree child;

  friend bool operator==(const StrategyEdge&, const StrategyEdge&) = default;
};

inline bool operator==(const StrategyBranch& a, const StrategyBranch& b) {
  return a.input == b.input && a.edges == b.edges;
}

/// Does an adaptive strategy of depth <= min(k, |I|) force a verdict on every
/// branch? k = 0 asks whether C itself already lies within E or within C\E.
/// Throws InvalidScenario (via Instance), UnknownSymbol / std::invalid_argument
/// for a bad forced prefix, BudgetExhausted when node_budget runs out.
bool decide(const Instance& s, std::uint64_t k, const SolveConfig& cfg = {},
            SearchStats* stats = nullptr);

/// Least k in 0..|I| for which decide holds; nullopt when none does.
std::optional<std::uint64_t> optimize(const Instance& s, const SolveConfig& cfg = {});

/// Materializes a winning tree. Children follow output order and each branch
/// picks the first winning input in alphabet order. Throws NoStrategy.
StrategyTree extract_strategy(const Instance& s, std::uint64_t k, const SolveConfig& cfg = {});

/// Certificate check; nullopt when `t` is a valid strategy of depth <= k,
/// otherwise a description of the first defect found.
std::optional<std::string> strategy_defect(const Instance& s, const StrategyTree& t, std::uint64_t k);
bool validate_strategy(const Instance& s, const StrategyTree& t, std::uint64_t k);

// OpenMP kernels. Results are identical to the serial entry points above.

/// Splits the root over its candidate first inputs across threads.
bool decide_parallel(const Instance& s, std::uint64_t k, const SolveConfig& cfg = {});

/// One decide per instance, instances distributed across threads.
std::vector<std::uint8_t> decide_batch(const std::vector<Instance>& instances,
                                       const std::vector<std::uint64_t>& ks,
                                       const SolveConfig& cfg = {});

std::vector<std::optional<std::uint64_t>> optimize_batch(const std::vector<Instance>& instances,
                                                         const SolveConfig& cfg = {});

}  // namespace atdp
