#pragma once

// Scenarios over extensionally defined behavior functions: a collection C of
// candidate IUT definitions, each mapping every input to a non-empty set of
// outputs, together with the subset E of correct definitions.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "atdp/errors.hpp"
#include "atdp/index_set.hpp"

namespace atdp {

struct BehaviorFunction {
  std::string name;
  /// input label -> output labels
  std::map<std::string, std::vector<std::string>> table;

  friend bool operator==(const BehaviorFunction&, const BehaviorFunction&) = default;
};

/// Plain data. Alphabet order is declaration order; that order drives every
/// deterministic enumeration in the solvers.
struct Scenario {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<BehaviorFunction> functions;
  std::vector<std::string> correct;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Step {
  std::string input;
  std::string output;

  friend bool operator==(const Step&, const Step&) = default;
};
using History = std::vector<Step>;

enum class Verdict { Correct, Incorrect, Undecided };

std::string_view to_string(Verdict v);

struct Violation {
  std::string function;  // empty when not function-specific
  std::string input;     // empty when not input-specific
  std::string message;

  std::string describe() const;
};

std::vector<Violation> validate_scenario(const Scenario& s);

class InvalidScenario : public Error {
 public:
  explicit InvalidScenario(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Indexed, validated view of a Scenario. Immutable after construction.
///
/// Internally every output cell is stored transposed: `producers(i, o)` is the
/// set of functions f with o in f(i), so filtering a consistent set by an
/// observation is a single bitset intersection.
class Instance {
 public:
  /// Implicit so that scenario values can be passed to every solver entry
  /// point directly. Throws InvalidScenario.
  Instance(Scenario s);  // NOLINT(google-explicit-constructor)

  const Scenario& scenario() const { return scenario_; }

  std::size_t num_inputs() const { return scenario_.inputs.size(); }
  std::size_t num_outputs() const { return scenario_.outputs.size(); }
  std::size_t num_functions() const { return scenario_.functions.size(); }

  const std::string& input_name(std::size_t i) const { return scenario_.inputs[i]; }
  const std::string& output_name(std::size_t o) const { return scenario_.outputs[o]; }
  const std::string& function_name(std::size_t f) const { return scenario_.functions[f].name; }

  std::optional<std::size_t> find_input(std::string_view label) const;
  std::optional<std::size_t> find_output(std::string_view label) const;
  std::optional<std::size_t> find_function(std::string_view name) const;
  /// As find_*, throwing UnknownSymbol.
  std::size_t input_index(std::string_view label) const;
  std::size_t output_index(std::string_view label) const;
  std::size_t function_index(std::string_view name) const;

  const IndexSet& producers(std::size_t input, std::size_t output) const {
    return producers_[input * num_outputs() + output];
  }
  const IndexSet& correct_set() const { return correct_; }
  const IndexSet& incorrect_set() const { return incorrect_; }
  IndexSet all_functions() const { return IndexSet::full(num_functions()); }
  IndexSet no_inputs() const { return IndexSet(num_inputs()); }

  bool produces(std::size_t function, std::size_t input, std::size_t output) const {
    return producers(input, output).test(function);
  }

  /// Outputs producible at `input` by some member of `cs`, in alphabet order.
  std::vector<std::size_t> outputs_of(const IndexSet& cs, std::size_t input) const;

  /// True iff cs is non-empty and lies entirely in E or entirely in C\E.
  bool verdict_forced(const IndexSet& cs) const {
    return cs.any() && (cs.is_subset_of(correct_) || cs.is_subset_of(incorrect_));
  }
  /// Throws HypothesisViolation on an empty set.
  Verdict verdict(const IndexSet& cs) const;

  IndexSet consistent(const History& h) const;
  IndexSet function_set(const std::vector<std::string>& names) const;
  std::vector<std::string> function_names(const IndexSet& cs) const;
  IndexSet input_set(const std::vector<std::string>& labels) const;

  bool deterministic() const { return deterministic_; }

  /// Scenario restricted to the functions in `keep` and the inputs not in
  /// `drop_inputs`. Alphabet order is preserved.
  Scenario restrict(const IndexSet& keep, const IndexSet& drop_inputs) const;

 private:
  Scenario scenario_;
  std::unordered_map<std::string, std::size_t> input_ix_, output_ix_, function_ix_;
  std::vector<IndexSet> producers_;
  IndexSet correct_, incorrect_;
  bool deterministic_ = true;
};

bool is_deterministic(const Instance& s);

/// Names of the functions consistent with every step of `h`, in declaration
/// order. Throws UnknownSymbol for labels outside the alphabets.
std::vector<std::string> consistent_set(const Instance& s, const History& h);

/// Throws HypothesisViolation when `cs` is empty.
Verdict verdict_of(const Instance& s, const std::vector<std::string>& cs);

}  // namespace atdp
