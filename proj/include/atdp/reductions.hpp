#pragma once

// Executable hardness constructions between adaptive testing and Minimum Set
// Cover / TQBF.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "atdp/model.hpp"
#include "atdp/oracle.hpp"

namespace atdp {

struct ReducedScenario {
  Scenario scenario;
  /// Depth budget the source instance maps to (TQBF only; 0 otherwise).
  std::uint64_t k = 0;
  /// Generated function or input name -> description of its source artifact.
  std::map<std::string, std::string> provenance;
};

/// One input per set, outputs {0,1}, a correct g that always answers 0 and an
/// incorrect f_e per element answering 1 exactly on the sets containing e.
ReducedScenario msc_to_scenario(const SetCoverInstance& sc);

/// Inverse direction for deterministic scenarios with a single correct g:
/// elements are the incorrect functions, S_i = {f : f(i) != g(i)}.
/// Throws std::invalid_argument on the wrong shape and on incorrect functions
/// no input separates from g (the scenario is infeasible).
SetCoverInstance scenario_to_msc(const Instance& s);

/// Largest-uncovered-first greedy cover of scenario_to_msc(s), returned as
/// the preset input suite. Ties go to the earlier input.
std::vector<std::string> greedy_cover(const Instance& s);

/// Names used by qbf_to_scenario for the four versions of existential x_j.
std::string qbf_input_name(unsigned j, bool negated, bool primed);

/// Builds the single-correct-function instance whose depth-k strategies exist
/// iff the formula is true: 4k inputs, outputs {0,1,-1}, and functions g,
/// one per clause, the anchor f0 and the order gadgets f_l, f'_l.
ReducedScenario qbf_to_scenario(const QbfFormula& q);

/// qbf_eval(q) == decide(qbf_to_scenario(q), k). Throws SizeGuardExceeded
/// for k > 3.
bool check_reduction_equivalence(const QbfFormula& q);

}  // namespace atdp
