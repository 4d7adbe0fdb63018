#include "atdp/model.hpp"

#include <set>
#include <sstream>
#include <unordered_set>

namespace atdp {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Correct: return "Correct";
    case Verdict::Incorrect: return "Incorrect";
    case Verdict::Undecided: return "Undecided";
  }
  return "?";
}

std::string Violation::describe() const {
  std::string out;
  if (!function.empty()) out += "function '" + function + "'";
  if (!input.empty()) out += (out.empty() ? "" : ", ") + std::string("input '") + input + "'";
  if (!out.empty()) out += ": ";
  return out + message;
}

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
  std::ostringstream os;
  os << "invalid scenario";
  for (const auto& v : vs) os << "; " << v.describe();
  return os.str();
}

void check_alphabet(const std::vector<std::string>& labels, const char* what,
                    std::vector<Violation>& out) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) out.push_back({"", "", std::string("empty ") + what + " label"});
    else if (!seen.insert(l).second)
      out.push_back({"", "", std::string("duplicate ") + what + " label '" + l + "'"});
  }
}

}  // namespace

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;
  check_alphabet(s.inputs, "input", out);
  check_alphabet(s.outputs, "output", out);

  const std::unordered_set<std::string> inputs(s.inputs.begin(), s.inputs.end());
  const std::unordered_set<std::string> outputs(s.outputs.begin(), s.outputs.end());

  if (s.functions.empty()) out.push_back({"", "", "collection of definitions is empty"});

  std::unordered_set<std::string> names;
  for (const auto& f : s.functions) {
    if (f.name.empty()) out.push_back({"", "", "function with empty name"});
    else if (!names.insert(f.name).second)
      out.push_back({f.name, "", "duplicate function name"});

    for (const auto& i : s.inputs) {
      auto it = f.table.find(i);
      if (it == f.table.end()) {
        out.push_back({f.name, i, "no image defined"});
        continue;
      }
      if (it->second.empty()) out.push_back({f.name, i, "empty image"});
      for (const auto& o : it->second)
        if (!outputs.count(o)) out.push_back({f.name, i, "unknown output '" + o + "'"});
    }
    for (const auto& [i, _] : f.table)
      if (!inputs.count(i)) out.push_back({f.name, i, "unknown input"});
  }

  for (const auto& c : s.correct)
    if (!names.count(c)) out.push_back({c, "", "listed as correct but not defined"});
  return out;
}

InvalidScenario::InvalidScenario(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

Instance::Instance(Scenario s) : scenario_(std::move(s)) {
  if (auto vs = validate_scenario(scenario_); !vs.empty()) throw InvalidScenario(std::move(vs));

  for (std::size_t i = 0; i < num_inputs(); ++i) input_ix_.emplace(scenario_.inputs[i], i);
  for (std::size_t o = 0; o < num_outputs(); ++o) output_ix_.emplace(scenario_.outputs[o], o);
  for (std::size_t f = 0; f < num_functions(); ++f) function_ix_.emplace(scenario_.functions[f].name, f);

  producers_.assign(num_inputs() * num_outputs(), IndexSet(num_functions()));
  for (std::size_t f = 0; f < num_functions(); ++f) {
    for (std::size_t i = 0; i < num_inputs(); ++i) {
      const auto& image = scenario_.functions[f].table.at(scenario_.inputs[i]);
      std::set<std::size_t> distinct;
      for (const auto& o : image) {
        distinct.insert(output_ix_.at(o));
        producers_[i * num_outputs() + output_ix_.at(o)].set(f);
      }
      if (distinct.size() != 1) deterministic_ = false;
    }
  }

  correct_ = IndexSet(num_functions());
  for (const auto& c : scenario_.correct) correct_.set(function_ix_.at(c));
  incorrect_ = all_functions() - correct_;
}

std::optional<std::size_t> Instance::find_input(std::string_view label) const {
  auto it = input_ix_.find(std::string(label));
  if (it == input_ix_.end()) return std::nullopt;
  return it->second;
}
std::optional<std::size_t> Instance::find_output(std::string_view label) const {
  auto it = output_ix_.find(std::string(label));
  if (it == output_ix_.end()) return std::nullopt;
  return it->second;
}
std::optional<std::size_t> Instance::find_function(std::string_view name) const {
  auto it = function_ix_.find(std::string(name));
  if (it == function_ix_.end()) return std::nullopt;
  return it->second;
}

std::size_t Instance::input_index(std::string_view label) const {
  if (auto i = find_input(label)) return *i;
  throw UnknownSymbol("unknown input '" + std::string(label) + "'");
}
std::size_t Instance::output_index(std::string_view label) const {
  if (auto o = find_output(label)) return *o;
  throw UnknownSymbol("unknown output '" + std::string(label) + "'");
}
std::size_t Instance::function_index(std::string_view name) const {
  if (auto f = find_function(name)) return *f;
  throw UnknownSymbol("unknown function '" + std::string(name) + "'");
}

std::vector<std::size_t> Instance::outputs_of(const IndexSet& cs, std::size_t input) const {
  std::vector<std::size_t> out;
  for (std::size_t o = 0; o < num_outputs(); ++o)
    if (producers(input, o).intersects(cs)) out.push_back(o);
  return out;
}

Verdict Instance::verdict(const IndexSet& cs) const {
  if (cs.none()) throw HypothesisViolation("no candidate definition is consistent with the observations");
  if (cs.is_subset_of(correct_)) return Verdict::Correct;
  if (cs.is_subset_of(incorrect_)) return Verdict::Incorrect;
  return Verdict::Undecided;
}

IndexSet Instance::consistent(const History& h) const {
  IndexSet cs = all_functions();
  for (const auto& step : h) cs &= producers(input_index(step.input), output_index(step.output));
  return cs;
}

IndexSet Instance::function_set(const std::vector<std::string>& names) const {
  IndexSet cs(num_functions());
  for (const auto& n : names) cs.set(function_index(n));
  return cs;
}

std::vector<std::string> Instance::function_names(const IndexSet& cs) const {
  std::vector<std::string> out;
  cs.for_each([&](std::size_t f) { out.push_back(function_name(f)); });
  return out;
}

IndexSet Instance::input_set(const std::vector<std::string>& labels) const {
  IndexSet used(num_inputs());
  for (const auto& l : labels) used.set(input_index(l));
  return used;
}

Scenario Instance::restrict(const IndexSet& keep, const IndexSet& drop_inputs) const {
  Scenario out;
  out.outputs = scenario_.outputs;
  for (std::size_t i = 0; i < num_inputs(); ++i)
    if (!drop_inputs.test(i)) out.inputs.push_back(scenario_.inputs[i]);
  keep.for_each([&](std::size_t f) {
    BehaviorFunction bf{scenario_.functions[f].name, {}};
    for (const auto& i : out.inputs) bf.table.emplace(i, scenario_.functions[f].table.at(i));
    out.functions.push_back(std::move(bf));
    if (correct_.test(f)) out.correct.push_back(scenario_.functions[f].name);
  });
  return out;
}

bool is_deterministic(const Instance& s) { return s.deterministic(); }

std::vector<std::string> consistent_set(const Instance& s, const History& h) {
  return s.function_names(s.consistent(h));
}

Verdict verdict_of(const Instance& s, const std::vector<std::string>& cs) {
  return s.verdict(s.function_set(cs));
}

}  // namespace atdp
