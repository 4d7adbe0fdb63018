#include "atdp/reductions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "atdp/solver.hpp"

namespace atdp {

ReducedScenario msc_to_scenario(const SetCoverInstance& sc) {
  if (auto problems = validate_cover(sc); !problems.empty()) throw std::invalid_argument(problems.front());

  ReducedScenario r;
  Scenario& s = r.scenario;
  s.outputs = {"0", "1"};
  for (const auto& set : sc.sets) {
    s.inputs.push_back(set.name);
    r.provenance[set.name] = "set " + set.name;
  }

  BehaviorFunction g{"g", {}};
  for (const auto& in : s.inputs) g.table[in] = {"0"};
  s.functions.push_back(std::move(g));
  s.correct = {"g"};
  r.provenance["g"] = "correct function, constant 0";

  for (const auto& e : sc.elements) {
    BehaviorFunction f{"f_" + e, {}};
    for (const auto& set : sc.sets) {
      const bool member = std::find(set.members.begin(), set.members.end(), e) != set.members.end();
      f.table[set.name] = {member ? "1" : "0"};
    }
    r.provenance[f.name] = "element " + e;
    s.functions.push_back(std::move(f));
  }
  return r;
}

SetCoverInstance scenario_to_msc(const Instance& s) {
  if (!s.deterministic()) throw std::invalid_argument("scenario_to_msc requires a deterministic scenario");
  if (s.correct_set().count() != 1) throw std::invalid_argument("scenario_to_msc requires exactly one correct function");
  const std::size_t g = s.correct_set().indices().front();

  auto image = [&](std::size_t f, std::size_t i) {
    for (std::size_t o = 0; o < s.num_outputs(); ++o)
      if (s.produces(f, i, o)) return o;
    return s.num_outputs();
  };

  SetCoverInstance sc;
  s.incorrect_set().for_each([&](std::size_t f) { sc.elements.push_back(s.function_name(f)); });
  std::set<std::string> covered;
  for (std::size_t i = 0; i < s.num_inputs(); ++i) {
    NamedSet set{s.input_name(i), {}};
    s.incorrect_set().for_each([&](std::size_t f) {
      if (image(f, i) != image(g, i)) {
        set.members.push_back(s.function_name(f));
        covered.insert(s.function_name(f));
      }
    });
    sc.sets.push_back(std::move(set));
  }
  for (const auto& e : sc.elements)
    if (!covered.count(e))
      throw std::invalid_argument("function '" + e + "' is indistinguishable from the correct function; no strategy exists");
  return sc;
}

std::vector<std::string> greedy_cover(const Instance& s) {
  const SetCoverInstance sc = scenario_to_msc(s);
  std::set<std::string> uncovered(sc.elements.begin(), sc.elements.end());
  std::vector<std::string> picked;
  while (!uncovered.empty()) {
    std::size_t best = sc.sets.size(), best_gain = 0;
    for (std::size_t k = 0; k < sc.sets.size(); ++k) {
      std::size_t gain = 0;
      for (const auto& m : sc.sets[k].members) gain += uncovered.count(m);
      if (gain > best_gain) {
        best = k;
        best_gain = gain;
      }
    }
    picked.push_back(sc.sets[best].name);
    for (const auto& m : sc.sets[best].members) uncovered.erase(m);
  }
  return picked;
}

std::string qbf_input_name(unsigned j, bool negated, bool primed) {
  return std::string(negated ? "~" : "") + "x" + std::to_string(j) + (primed ? "'" : "");
}

namespace {

using Image = std::vector<std::string>;
const Image kZero{"0"}, kOne{"1"}, kMinus{"-1"}, kFree{"0", "1"};

// Answer of a clause function to either version of existential x_j.
const Image& clause_image(const Clause& c, unsigned j, bool negated_input) {
  bool x = false, nx = false, y = false, ny = false;
  for (const auto& l : c) {
    if (l.var != j) continue;
    if (l.kind == Literal::Kind::X) (l.negated ? nx : x) = true;
    else (l.negated ? ny : y) = true;
  }
  if (negated_input ? nx : x) return kMinus;
  if (y && ny) return kMinus;
  if (y) return kZero;
  if (ny) return kOne;
  return kFree;
}

}  // namespace

ReducedScenario qbf_to_scenario(const QbfFormula& formula) {
  const QbfFormula q = normalize(formula);
  if (q.k == 0) throw std::invalid_argument("formula needs at least one quantifier pair");

  ReducedScenario r;
  r.k = q.k;
  Scenario& s = r.scenario;
  s.outputs = {"0", "1", "-1"};

  struct Version {
    unsigned var;
    bool negated;
    bool primed;
  };
  std::vector<Version> versions;
  for (unsigned j = 1; j <= q.k; ++j)
    for (bool primed : {false, true})
      for (bool negated : {false, true}) {
        versions.push_back({j, negated, primed});
        const std::string name = qbf_input_name(j, negated, primed);
        s.inputs.push_back(name);
        r.provenance[name] = "x" + std::to_string(j) + (negated ? " := false" : " := true") +
                             (primed ? ", primed copy" : "");
      }
  auto add = [&](const std::string& name, const std::string& origin, auto&& image_of) {
    BehaviorFunction f{name, {}};
    for (const auto& v : versions) f.table[qbf_input_name(v.var, v.negated, v.primed)] = image_of(v);
    s.functions.push_back(std::move(f));
    r.provenance[name] = origin;
  };

  add("g", "correct function", [](const Version&) { return kFree; });
  s.correct = {"g"};

  for (std::size_t i = 0; i < q.clauses.size(); ++i) {
    std::string text;
    for (const auto& l : q.clauses[i]) text += (text.empty() ? "" : " | ") + to_string(l);
    add("f_c" + std::to_string(i + 1), "clause " + std::to_string(i + 1) + ": " + text,
        [&](const Version& v) { return clause_image(q.clauses[i], v.var, v.negated); });
  }

  add("f0", "anchor for x1", [](const Version& v) { return v.var == 1 ? kMinus : kFree; });

  for (unsigned l = 1; l < q.k; ++l) {
    add("f" + std::to_string(l), "order gadget x" + std::to_string(l) + " -> x" + std::to_string(l + 1) + ", rescued by primed",
        [l](const Version& v) {
          if (v.var == l) return kZero;
          if (v.var == l + 1) return v.primed ? kMinus : kFree;
          return kFree;
        });
    add("f" + std::to_string(l) + "'", "order gadget x" + std::to_string(l) + " -> x" + std::to_string(l + 1) + ", rescued by non-primed",
        [l](const Version& v) {
          if (v.var == l) return kOne;
          if (v.var == l + 1) return v.primed ? kFree : kMinus;
          return kFree;
        });
  }
  return r;
}

bool check_reduction_equivalence(const QbfFormula& q) {
  if (q.k > 3) throw SizeGuardExceeded("check_reduction_equivalence limited to k <= 3");
  const ReducedScenario r = qbf_to_scenario(q);
  return qbf_eval(q) == decide(Instance(r.scenario), r.k);
}

}  // namespace atdp
