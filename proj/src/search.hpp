#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "atdp/solver.hpp"

namespace atdp::detail {

/// Shared state of one exact search over a fixed instance and configuration.
/// Not thread-safe; parallel kernels give every thread its own Search.
class Search {
 public:
  Search(const Instance& s, const SolveConfig& cfg);

  const Instance& instance() const { return s_; }

  /// min(k, |I|).
  unsigned clamp(std::uint64_t k) const;

  /// Decides the root position with budget k (already clamped or not).
  bool decide(std::uint64_t k);

  /// Memoized recursion: can the tester force a verdict from consistent set
  /// `cs`, having used `used`, with `remaining` inputs left? `level` is the
  /// number of inputs applied so far (selects forced-prefix moves).
  bool wins(const IndexSet& cs, const IndexSet& used, unsigned remaining, unsigned level);

  /// Does applying `input` next win on every producible output?
  bool input_wins(const IndexSet& cs, const IndexSet& used, std::size_t input,
                  unsigned remaining, unsigned level);

  /// Inputs admissible at `level` given the used set, in alphabet order.
  std::vector<std::size_t> candidates(const IndexSet& used, unsigned level) const;

  /// Polynomial-space backtracking machine over explicit per-level vectors.
  bool run_machine(unsigned depth);

  const SearchStats& stats() const { return stats_; }
  bool early_stop() const { return cfg_.mode == SearchMode::EarlyStop; }

 private:
  struct Key {
    IndexSet cs;
    IndexSet used;
    unsigned remaining;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.cs.hash() * 31 + k.used.hash() * 7 + k.remaining;
    }
  };

  void count_node();
  bool admissible(std::size_t input, const IndexSet& used, unsigned level) const;

  const Instance& s_;
  SolveConfig cfg_;
  std::vector<std::size_t> prefix_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  SearchStats stats_;
};

}  // namespace atdp::detail
