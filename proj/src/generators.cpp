#include "atdp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace atdp {

namespace {

BehaviorFunction cas_function(std::string name, std::vector<std::string> near, std::vector<std::string> far,
                              std::vector<std::string> inter) {
  return {std::move(name), {{"near", std::move(near)}, {"far", std::move(far)}, {"inter", std::move(inter)}}};
}

}  // namespace

Scenario builtin_cas() {
  Scenario s;
  s.inputs = {"near", "far", "inter"};
  s.outputs = {"nothing", "turn", "brake", "both"};
  s.functions = {
      cas_function("f1", {"turn"}, {"brake"}, {"turn", "brake"}),
      cas_function("f2", {"turn"}, {"brake"}, {"turn"}),
      cas_function("f3", {"turn"}, {"brake"}, {"brake"}),
      cas_function("f4", {"turn"}, {"brake"}, {"both"}),
      cas_function("f5", {"turn"}, {"nothing"}, {"turn"}),
      cas_function("f6", {"nothing"}, {"brake"}, {"brake"}),
      cas_function("f7", {"turn"}, {"turn"}, {"turn"}),
      cas_function("f8", {"brake"}, {"brake"}, {"brake"}),
      cas_function("f9", {"nothing"}, {"brake"}, {"nothing"}),
      cas_function("f10", {"turn"}, {"nothing"}, {"nothing"}),
      cas_function("f11", {"nothing"}, {"nothing"}, {"nothing"}),
      cas_function("f12", {"turn"}, {"nothing"}, {"nothing", "turn"}),
      cas_function("f13", {"nothing"}, {"brake"}, {"nothing", "brake"}),
  };
  s.correct = {"f1", "f2", "f3"};
  return s;
}

Scenario cas_variant(CasVariant which) {
  Scenario s = builtin_cas();
  auto& far = s.functions[6].table.at("far");
  switch (which) {
    case CasVariant::F7Nothing: far = {"nothing", "turn"}; break;
    case CasVariant::F7BrakeNondet: far = {"turn", "brake"}; break;
  }
  return s;
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate_factored(const FactoredSpec& spec) {
  std::vector<std::string> out;
  auto unique = [&](const std::vector<std::string>& names, const std::string& what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (n.empty()) out.push_back("empty " + what + " name");
      else if (!seen.insert(n).second) out.push_back("duplicate " + what + " '" + n + "'");
    }
    return seen;
  };
  const auto inputs = unique(spec.inputs, "input");
  const auto outputs = unique(spec.outputs, "output");

  if (spec.axes.empty()) out.push_back("at least one choice axis is required");
  std::map<std::string, std::set<std::string>> axes;
  for (const auto& a : spec.axes) {
    if (a.options.empty()) out.push_back("axis '" + a.name + "' has no options");
    if (axes.count(a.name)) out.push_back("duplicate axis '" + a.name + "'");
    axes[a.name] = unique(a.options, "option of axis '" + a.name + "'");
  }
  std::map<std::string, std::set<std::string>> families;
  for (const auto& f : spec.fault_families) {
    if (f.options.empty()) out.push_back("fault family '" + f.name + "' has no options");
    if (families.count(f.name)) out.push_back("duplicate fault family '" + f.name + "'");
    families[f.name] = unique(f.options, "option of fault family '" + f.name + "'");
  }

  for (std::size_t r = 0; r < spec.behavior.size(); ++r) {
    const auto& rule = spec.behavior[r];
    const std::string where = "behavior[" + std::to_string(r) + "]";
    if (!inputs.count(rule.input)) out.push_back(where + ": unknown input '" + rule.input + "'");
    if (rule.outputs.empty()) out.push_back(where + ": empty output set");
    for (const auto& o : rule.outputs)
      if (!outputs.count(o)) out.push_back(where + ": unknown output '" + o + "'");
    for (const auto& [axis, option] : rule.when) {
      auto it = axes.find(axis);
      if (it == axes.end()) out.push_back(where + ": unknown axis '" + axis + "'");
      else if (!it->second.count(option)) out.push_back(where + ": unknown option '" + option + "' of axis '" + axis + "'");
    }
    if (rule.fault) {
      const auto slash = rule.fault->find('/');
      const std::string family = rule.fault->substr(0, slash);
      auto it = families.find(family);
      if (it == families.end()) out.push_back(where + ": unknown fault family '" + family + "'");
      else if (slash != std::string::npos && !it->second.count(rule.fault->substr(slash + 1)))
        out.push_back(where + ": unknown fault option '" + *rule.fault + "'");
    }
  }
  return out;
}

FactoredCounts count_factored(const FactoredSpec& spec) {
  if (auto problems = validate_factored(spec); !problems.empty()) throw std::invalid_argument(problems.front());
  FactoredCounts c;
  c.correct = 1;
  for (const auto& a : spec.axes) c.correct *= a.options.size();

  // ways[j]: assignments touching exactly j families (elementary symmetric
  // polynomial of the option counts).
  std::vector<BigCount> ways(spec.max_faults + 1, 0);
  ways[0] = 1;
  for (const auto& f : spec.fault_families)
    for (std::size_t j = spec.max_faults; j >= 1; --j) ways[j] += ways[j - 1] * f.options.size();
  c.fault_combos = 0;
  for (const auto& w : ways) c.fault_combos += w;
  c.total = c.correct * c.fault_combos;
  return c;
}

Scenario expand_factored(const FactoredSpec& spec, std::uint64_t cap) {
  const FactoredCounts counts = count_factored(spec);
  if (counts.total > cap)
    throw SizeGuardExceeded("factored spec expands to " + counts.total.str() + " functions, above the cap of " +
                            std::to_string(cap));

  Scenario s;
  s.inputs = spec.inputs;
  s.outputs = spec.outputs;

  // Choice vectors in mixed radix, first axis most significant.
  std::vector<std::vector<std::size_t>> choices{{}};
  for (const auto& a : spec.axes) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& prefix : choices)
      for (std::size_t o = 0; o < a.options.size(); ++o) {
        auto v = prefix;
        v.push_back(o);
        next.push_back(std::move(v));
      }
    choices = std::move(next);
  }

  // Fault assignments: per family either inactive (npos) or one option.
  constexpr std::size_t kOff = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> assignments;
  std::vector<std::size_t> current(spec.fault_families.size(), kOff);
  std::function<void(std::size_t, unsigned)> enumerate = [&](std::size_t fam, unsigned active) {
    if (fam == spec.fault_families.size()) {
      assignments.push_back(current);
      return;
    }
    current[fam] = kOff;
    enumerate(fam + 1, active);
    if (active < spec.max_faults)
      for (std::size_t o = 0; o < spec.fault_families[fam].options.size(); ++o) {
        current[fam] = o;
        enumerate(fam + 1, active + 1);
      }
    current[fam] = kOff;
  };
  enumerate(0, 0);
  // Fault-free first, then by number of faults, keeping enumeration order.
  std::stable_sort(assignments.begin(), assignments.end(), [&](const auto& a, const auto& b) {
    auto n = [&](const auto& v) { return std::count_if(v.begin(), v.end(), [&](std::size_t x) { return x != kOff; }); };
    return n(a) < n(b);
  });

  std::map<std::string, std::size_t> out_rank;
  for (std::size_t o = 0; o < spec.outputs.size(); ++o) out_rank[spec.outputs[o]] = o;

  for (const auto& faults : assignments) {
    for (const auto& choice : choices) {
      std::string name;
      for (std::size_t a = 0; a < spec.axes.size(); ++a)
        name += (a ? "," : "") + spec.axes[a].name + "=" + spec.axes[a].options[choice[a]];
      for (std::size_t f = 0; f < faults.size(); ++f)
        if (faults[f] != kOff)
          name += "+" + spec.fault_families[f].name + "=" + spec.fault_families[f].options[faults[f]];

      BehaviorFunction fn{name, {}};
      for (const auto& input : spec.inputs) {
        const BehaviorRule* chosen = nullptr;
        for (const auto& rule : spec.behavior) {
          if (rule.input != input) continue;
          bool applies = true;
          for (std::size_t a = 0; a < spec.axes.size() && applies; ++a) {
            auto it = rule.when.find(spec.axes[a].name);
            if (it != rule.when.end() && it->second != spec.axes[a].options[choice[a]]) applies = false;
          }
          if (applies && rule.fault) {
            const auto slash = rule.fault->find('/');
            const std::string family = rule.fault->substr(0, slash);
            applies = false;
            for (std::size_t f = 0; f < faults.size(); ++f) {
              if (spec.fault_families[f].name != family || faults[f] == kOff) continue;
              applies = slash == std::string::npos ||
                        spec.fault_families[f].options[faults[f]] == rule.fault->substr(slash + 1);
            }
          }
          if (applies) chosen = &rule;
        }
        if (!chosen) throw std::invalid_argument("behavior table incomplete: no rule for function '" + name + "' on input '" + input + "'");
        std::vector<std::string> image = chosen->outputs;
        std::sort(image.begin(), image.end(), [&](const auto& x, const auto& y) { return out_rank[x] < out_rank[y]; });
        image.erase(std::unique(image.begin(), image.end()), image.end());
        fn.table[input] = std::move(image);
      }
      const bool fault_free = std::all_of(faults.begin(), faults.end(), [&](std::size_t x) { return x == kOff; });
      if (fault_free) s.correct.push_back(name);
      s.functions.push_back(std::move(fn));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

std::string Region::describe() const {
  std::ostringstream os;
  os << (low_closed ? "[" : "(") << low << "," << high << (high_closed ? "]" : ")");
  return os.str();
}

DiscretizedScenario discretize_observations(const NumericScenario& ns) {
  if (!(ns.margin >= 0.0) || !std::isfinite(ns.margin)) throw std::invalid_argument("margin must be a finite non-negative number");

  struct Interval {
    double low, high;
    std::size_t function;
  };

  DiscretizedScenario out;
  Scenario& s = out.scenario;
  s.inputs = ns.inputs;
  s.correct = ns.correct;
  for (const auto& f : ns.functions) s.functions.push_back({f.name, {}});

  std::size_t max_regions = 0;
  for (const auto& input : ns.inputs) {
    std::vector<Interval> intervals;
    std::vector<double> ends;
    for (std::size_t f = 0; f < ns.functions.size(); ++f) {
      auto it = ns.functions[f].table.find(input);
      if (it == ns.functions[f].table.end()) continue;  // reported by validate_scenario
      for (double v : it->second) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite value for function '" + ns.functions[f].name + "'");
        intervals.push_back({v - ns.margin, v + ns.margin, f});
        ends.push_back(v - ns.margin);
        ends.push_back(v + ns.margin);
      }
    }
    // Endpoints closer than rounding noise are the same point.
    std::sort(ends.begin(), ends.end());
    std::vector<double> points;
    for (double e : ends)
      if (points.empty() || e - points.back() > 1e-9 * std::max(1.0, std::abs(e))) points.push_back(e);
    auto snap = [&](double x) {
      auto it = std::lower_bound(points.begin(), points.end(), x);
      if (it == points.end()) return points.size() - 1;
      std::size_t ix = static_cast<std::size_t>(it - points.begin());
      if (ix > 0 && x - points[ix - 1] < *it - x) --ix;
      return ix;
    };

    // Pieces alternate point, gap, point, ...: piece 2j is points[j], piece
    // 2j+1 the open gap (points[j], points[j+1]).
    const std::size_t n_pieces = points.empty() ? 0 : 2 * points.size() - 1;
    std::vector<std::vector<std::size_t>> cover(n_pieces);
    for (const auto& iv : intervals) {
      const std::size_t lo = snap(iv.low), hi = snap(iv.high);
      for (std::size_t p = 2 * lo; p <= 2 * hi; ++p) cover[p].push_back(iv.function);
    }
    for (auto& c : cover) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }

    std::vector<Region> regions;
    std::size_t p = 0;
    while (p < n_pieces) {
      if (cover[p].empty()) {
        ++p;
        continue;
      }
      std::size_t q = p;
      while (q + 1 < n_pieces && cover[q + 1] == cover[p]) ++q;
      Region r;
      r.symbol = "o" + std::to_string(regions.size() + 1);
      r.low = points[p / 2];
      r.low_closed = p % 2 == 0;
      r.high = points[(q + 1) / 2];
      r.high_closed = q % 2 == 0;
      for (std::size_t f : cover[p]) {
        r.functions.push_back(ns.functions[f].name);
        s.functions[f].table[input].push_back(r.symbol);
      }
      regions.push_back(std::move(r));
      p = q + 1;
    }
    max_regions = std::max(max_regions, regions.size());
    out.regions[input] = std::move(regions);
  }
  for (std::size_t r = 1; r <= max_regions; ++r) s.outputs.push_back("o" + std::to_string(r));
  return out;
}

// ---------------------------------------------------------------------------

Scenario random_scenario(const RandomScenarioParams& p) {
  if (p.correct > p.functions) throw std::invalid_argument("more correct functions than functions");
  if (!(p.nondet_density >= 0.0 && p.nondet_density <= 1.0)) throw std::invalid_argument("nondet_density must lie in [0,1]");
  if (p.outputs == 0 || p.functions == 0) throw std::invalid_argument("need at least one output and one function");

  // Plain engine arithmetic so the corpus is identical across standard libraries.
  std::mt19937_64 rng(p.seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  Scenario s;
  for (std::size_t i = 1; i <= p.inputs; ++i) s.inputs.push_back("i" + std::to_string(i));
  for (std::size_t o = 1; o <= p.outputs; ++o) s.outputs.push_back("o" + std::to_string(o));
  for (std::size_t f = 1; f <= p.functions; ++f) {
    BehaviorFunction fn{"f" + std::to_string(f), {}};
    for (const auto& input : s.inputs) {
      const std::size_t first = below(p.outputs);
      std::vector<std::string> image;
      for (std::size_t o = 0; o < p.outputs; ++o) {
        const bool extra = o != first && unit() < p.nondet_density;
        if (o == first || extra) image.push_back(s.outputs[o]);
      }
      fn.table[input] = std::move(image);
    }
    if (f <= p.correct) s.correct.push_back(fn.name);
    s.functions.push_back(std::move(fn));
  }
  return s;
}

}  // namespace atdp
