#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "atdp/model.hpp"

namespace atdp {

/// The thirteen-candidate collision-avoidance example: inputs near/far/inter,
/// outputs nothing/turn/brake/both, correct f1..f3.
Scenario builtin_cas();

enum class CasVariant {
  F7Nothing,       // f7(far) = {turn, nothing}
  F7BrakeNondet,   // f7(far) = {turn, brake}
};

Scenario cas_variant(CasVariant which);

// ---------------------------------------------------------------------------
// Factored instance descriptions

struct ChoiceAxis {
  std::string name;
  std::vector<std::string> options;
};

struct FaultFamily {
  std::string name;
  std::vector<std::string> options;
};

/// One row of a behavior table. A rule applies to (choices, faults, input)
/// when its input matches, every `when` entry agrees with the choice vector
/// and, if `fault` is set, that fault is active. `fault` is either
/// "family" (any option) or "family/option". Among applicable rules the last
/// one declared wins, so fault rules normally follow the base rules.
struct BehaviorRule {
  std::string input;
  std::map<std::string, std::string> when;
  std::optional<std::string> fault;
  std::vector<std::string> outputs;
};

struct FactoredSpec {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<ChoiceAxis> axes;
  std::vector<FaultFamily> fault_families;
  unsigned max_faults = 0;
  std::vector<BehaviorRule> behavior;
};

using BigCount = boost::multiprecision::cpp_int;

struct FactoredCounts {
  BigCount correct;       // product of axis option counts
  BigCount fault_combos;  // assignments of <= max_faults families, one option each
  BigCount total;         // correct * fault_combos

  friend bool operator==(const FactoredCounts&, const FactoredCounts&) = default;
};

/// Structural problems (empty axes, duplicate names, unknown references).
/// Behavior totality is checked by expand_factored.
std::vector<std::string> validate_factored(const FactoredSpec& spec);

/// Counts without materializing any function. Throws std::invalid_argument
/// on an invalid spec.
FactoredCounts count_factored(const FactoredSpec& spec);

inline constexpr std::uint64_t kDefaultExpansionCap = 100000;

/// One function per (choice vector, admissible fault assignment); E is the
/// fault-free functions. Throws SizeGuardExceeded above `cap` and
/// std::invalid_argument when some cell has no applicable rule.
Scenario expand_factored(const FactoredSpec& spec, std::uint64_t cap = kDefaultExpansionCap);

// ---------------------------------------------------------------------------
// Numeric observations

struct NumericFunction {
  std::string name;
  std::map<std::string, std::vector<double>> table;
};

struct NumericScenario {
  std::vector<std::string> inputs;
  std::vector<NumericFunction> functions;
  std::vector<std::string> correct;
  double margin = 0.0;
};

/// A maximal piece of the observable line on which the set of functions that
/// could explain an observation is constant.
struct Region {
  std::string symbol;
  double low = 0.0;
  double high = 0.0;
  bool low_closed = true;
  bool high_closed = true;
  std::vector<std::string> functions;

  std::string describe() const;
};

struct DiscretizedScenario {
  Scenario scenario;
  /// Regions per input, ordered along the line.
  std::map<std::string, std::vector<Region>> regions;
};

/// Widens every value v to [v - margin, v + margin] and partitions the union
/// of those intervals, per input, into maximal regions with a constant
/// covering set. Region symbols are o1, o2, ... numbered per input.
/// Throws std::invalid_argument on negative margins or non-finite values.
DiscretizedScenario discretize_observations(const NumericScenario& ns);

// ---------------------------------------------------------------------------

struct RandomScenarioParams {
  std::uint64_t seed = 1;
  std::size_t inputs = 3;
  std::size_t outputs = 3;
  std::size_t functions = 6;
  std::size_t correct = 2;
  /// Probability of each extra output joining a cell's image.
  double nondet_density = 0.0;
};

/// Reproducible from the seed. Labels are i1.., o1.., f1..; the first
/// `correct` functions form E.
Scenario random_scenario(const RandomScenarioParams& p);

}  // namespace atdp
