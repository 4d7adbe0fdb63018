// Acceptance checks. One PASS/FAIL line per criterion; exits non-zero when
// any criterion misses its expected value or its time limit.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "atdp/generators.hpp"
#include "atdp/io.hpp"
#include "atdp/oracle.hpp"
#include "atdp/reductions.hpp"
#include "atdp/session.hpp"
#include "atdp/solver.hpp"
#include "corpus.hpp"

using namespace atdp;

namespace {

constexpr std::uint64_t kHugeK = ~std::uint64_t{0};

/// Collects the first few failures of one criterion.
struct Report {
  std::vector<std::string> failures;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }
};

int failed_criteria = 0;

void criterion(const char* name, double limit_seconds, const std::function<void(Report&)>& body) {
  Report r;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < limit_seconds;
  const bool pass = r.ok() && in_time;
  if (!pass) ++failed_criteria;
  std::printf("%s %-28s %7zu checks  %8.3f s (limit %g s)\n", pass ? "PASS" : "FAIL", name, r.checks, elapsed,
              limit_seconds);
  for (const auto& f : r.failures) std::printf("     - %s\n", f.c_str());
  if (!in_time) std::printf("     - over the time limit\n");
  std::fflush(stdout);
}

SolveConfig with_first(const std::string& input) {
  SolveConfig cfg;
  cfg.forced_prefix = {input};
  return cfg;
}

SolveConfig with_mode(SearchMode m) {
  SolveConfig cfg;
  cfg.mode = m;
  return cfg;
}

std::string optional_text(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : "none";
}

// --- TQBF enumeration -------------------------------------------------------
//
// A clause over k variable pairs is a bitmask over 4k literal slots; slot
// 4(j-1) + 2*kind + negated holds x_j / ~x_j / y_j / ~y_j.

Clause clause_from_mask(unsigned k, unsigned mask) {
  Clause c;
  for (unsigned b = 0; b < 4 * k; ++b)
    if (mask >> b & 1)
      c.push_back({(b % 4) / 2 == 0 ? Literal::Kind::X : Literal::Kind::Y, b / 4 + 1, b % 2 == 1});
  return c;
}

/// flip_table[f][mask]: the clause after negating every variable whose bit is
/// set in f (one bit per x_j and y_j).
std::vector<std::vector<unsigned>> polarity_flips(unsigned k) {
  const unsigned slots = 4 * k;
  const unsigned variables = 2 * k;
  std::vector<std::vector<unsigned>> table(1u << variables, std::vector<unsigned>(1u << slots));
  for (unsigned f = 0; f < (1u << variables); ++f)
    for (unsigned mask = 0; mask < (1u << slots); ++mask) {
      unsigned out = 0;
      for (unsigned b = 0; b < slots; ++b)
        if (mask >> b & 1) out |= 1u << ((f >> (b / 2) & 1) ? (b ^ 1) : b);
      table[f][mask] = out;
    }
  return table;
}

/// Every set of 1..max_clauses distinct non-empty clauses that is the least
/// member of its orbit under polarity flips.
std::vector<QbfFormula> canonical_formulas(unsigned k, unsigned max_clauses) {
  const auto flips = polarity_flips(k);
  const unsigned n_masks = (1u << (4 * k)) - 1;  // masks 1..n_masks
  std::vector<QbfFormula> out;
  std::vector<unsigned> chosen;
  std::function<void(unsigned)> extend = [&](unsigned next) {
    if (!chosen.empty()) {
      bool least = true;
      std::vector<unsigned> image(chosen.size());
      for (std::size_t f = 1; f < flips.size() && least; ++f) {
        for (std::size_t c = 0; c < chosen.size(); ++c) image[c] = flips[f][chosen[c]];
        std::sort(image.begin(), image.end());
        least = !(image < chosen);
      }
      if (least) {
        QbfFormula q{k, {}};
        for (unsigned m : chosen) q.clauses.push_back(clause_from_mask(k, m));
        out.push_back(std::move(q));
      }
    }
    if (chosen.size() == max_clauses) return;
    for (unsigned m = next; m <= n_masks; ++m) {
      chosen.push_back(m);
      extend(m + 1);
      chosen.pop_back();
    }
  };
  extend(1);
  return out;
}

std::string describe(const QbfFormula& q) {
  std::ostringstream os;
  os << "k=" << q.k;
  for (const auto& c : q.clauses) {
    os << " (";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << to_string(c[i]);
    os << ")";
  }
  return os.str();
}

void check_qbf(Report& r, const QbfFormula& q) {
  const ReducedScenario red = qbf_to_scenario(q);
  r.expect(red.scenario.functions.size() == 2 * q.k + q.clauses.size(), "function count " + describe(q));
  r.expect(red.scenario.inputs.size() == 4 * q.k, "input count " + describe(q));
  r.expect(red.scenario.outputs.size() == 3, "output count " + describe(q));
  r.expect(red.k == q.k, "depth budget " + describe(q));
}

// --- strategy mutations -----------------------------------------------------

/// Visits every leaf and every branch of `t` with a mutable handle.
void for_each_node(StrategyTree& t, const std::function<void(StrategyTree&)>& visit) {
  visit(t);
  if (!t.is_leaf())
    for (auto& e : t.branch().edges) for_each_node(e.child, visit);
}

void check_certificate(Report& r, const Instance& s, std::uint64_t k, const std::string& label) {
  const StrategyTree tree = extract_strategy(s, k);
  r.expect(validate_strategy(s, tree, k), label + ": extracted strategy rejected");

  // Count nodes so each mutation can target one of them by position.
  StrategyTree probe = tree;
  std::size_t nodes = 0;
  for_each_node(probe, [&](StrategyTree&) { ++nodes; });

  for (std::size_t target = 0; target < nodes; ++target) {
    StrategyTree base = tree;
    std::size_t position = 0;
    StrategyTree* node = nullptr;
    for_each_node(base, [&](StrategyTree& n) {
      if (position++ == target) node = &n;
    });
    if (node->is_leaf()) {
      for (Verdict v : {Verdict::Correct, Verdict::Incorrect, Verdict::Undecided}) {
        if (v == node->leaf().verdict) continue;
        StrategyTree mutated = base;
        std::size_t p = 0;
        for_each_node(mutated, [&](StrategyTree& n) {
          if (p++ == target) n.leaf().verdict = v;
        });
        r.expect(!validate_strategy(s, mutated, k), label + ": leaf verdict flip accepted at node " +
                                                        std::to_string(target));
      }
    } else {
      for (std::size_t e = 0; e < node->branch().edges.size(); ++e) {
        StrategyTree mutated = base;
        std::size_t p = 0;
        for_each_node(mutated, [&](StrategyTree& n) {
          if (p++ == target) n.branch().edges.erase(n.branch().edges.begin() + static_cast<std::ptrdiff_t>(e));
        });
        r.expect(!validate_strategy(s, mutated, k), label + ": edge deletion accepted at node " +
                                                        std::to_string(target));
      }
    }
  }
}

}  // namespace

int main() {
  criterion("cas-optimum", 1.0, [](Report& r) {
    const Instance cas(builtin_cas());
    const auto best = optimize(cas);
    r.expect(best == std::optional<std::uint64_t>{2}, "optimize = " + optional_text(best));
    r.expect(!decide(cas, 1), "decide(k=1) holds");
    r.expect(decide(cas, 2), "decide(k=2) fails");
    const StrategyTree tree = extract_strategy(cas, 2);
    r.expect(!tree.is_leaf() && tree.branch().input == "inter", "root input is not inter");
    r.expect(validate_strategy(cas, tree, 2), "strategy rejected");
    r.expect(tree == corpus::cas_tree(), "strategy differs from the hand-built tree");
  });

  criterion("first-move-sensitivity", 1.0, [](Report& r) {
    const Instance cas(builtin_cas());
    for (const std::string first : {"near", "far"}) {
      r.expect(!decide(cas, 2, with_first(first)), "decide(2, first=" + first + ") holds");
      r.expect(decide(cas, 3, with_first(first)), "decide(3, first=" + first + ") fails");
    }
    r.expect(decide(cas, 2, with_first("inter")), "decide(2, first=inter) fails");
  });

  criterion("variants", 1.0, [](Report& r) {
    const auto nothing = optimize(cas_variant(CasVariant::F7Nothing));
    r.expect(nothing == std::optional<std::uint64_t>{2}, "f7-nothing optimizes to " + optional_text(nothing));
    const auto nondet = optimize(cas_variant(CasVariant::F7BrakeNondet));
    r.expect(!nondet, "f7-brake-nondet optimizes to " + optional_text(nondet));
  });

  criterion("oracle-equivalence", 60.0, [](Report& r) {
    std::size_t deterministic = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
      const Scenario sc = corpus::small(seed);
      if (is_deterministic(sc)) ++deterministic;
      const Instance s(sc);
      const auto reference = min_depth(sc);
      for (std::uint64_t k = 0; k <= 3; ++k) {
        const bool expected = reference && *reference <= k;
        for (SearchMode m : {SearchMode::LiteralB1, SearchMode::EarlyStop}) {
          const char* mode = m == SearchMode::LiteralB1 ? "literal" : "early-stop";
          r.expect(decide(s, k, with_mode(m)) == expected,
                   "seed " + std::to_string(seed) + " k " + std::to_string(k) + " " + mode);
          SolveConfig machine = with_mode(m);
          machine.memoize = false;
          r.expect(decide(s, k, machine) == expected,
                   "seed " + std::to_string(seed) + " k " + std::to_string(k) + " " + mode + " no-memo");
        }
      }
    }
    r.expect(deterministic > 0 && deterministic < 500, "corpus is not mixed in determinism");
  });

  criterion("tqbf-reduction", 120.0, [](Report& r) {
    const auto x = [](unsigned j, bool neg = false) { return Literal{Literal::Kind::X, j, neg}; };
    const auto y = [](unsigned j, bool neg = false) { return Literal{Literal::Kind::Y, j, neg}; };
    const QbfFormula original{2, {{x(2), y(1, true)}, {x(2, true), y(1)}}};
    const QbfFormula swapped{2, {{x(1), y(2, true)}, {x(1, true), y(2)}}};
    r.expect(qbf_eval(original) && decide(qbf_to_scenario(original).scenario, 2), "original order is not true");
    r.expect(!qbf_eval(swapped) && !decide(qbf_to_scenario(swapped).scenario, 2), "swapped order is not false");

    std::vector<QbfFormula> formulas;
    for (unsigned k = 1; k <= 2; ++k) {
      auto batch = canonical_formulas(k, 3);
      formulas.insert(formulas.end(), batch.begin(), batch.end());
    }
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 100; ++t) {
      QbfFormula q{3, {}};
      const std::size_t n = 1 + rng() % 3;
      for (std::size_t c = 0; c < n; ++c) {
        unsigned mask = 0;
        while (mask == 0) mask = static_cast<unsigned>(rng() % (1u << 12));
        q.clauses.push_back(clause_from_mask(3, mask));
      }
      formulas.push_back(std::move(q));
    }

    std::vector<Instance> instances;
    std::vector<std::uint64_t> ks;
    instances.reserve(formulas.size());
    for (const auto& q : formulas) {
      check_qbf(r, q);
      instances.emplace_back(qbf_to_scenario(q).scenario);
      ks.push_back(q.k);
    }
    const auto verdicts = decide_batch(instances, ks);
    std::size_t true_formulas = 0;
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      const bool truth = qbf_eval(formulas[i]);
      true_formulas += truth;
      r.expect(truth == static_cast<bool>(verdicts[i]), "mismatch on " + describe(formulas[i]));
    }
    r.expect(true_formulas > 0 && true_formulas < formulas.size(), "formula corpus is one-sided");
    std::printf("     %zu formulas, %zu true\n", formulas.size(), true_formulas);
  });

  criterion("msc-reduction", 60.0, [](Report& r) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const SetCoverInstance sc = corpus::random_cover(seed, 6, 8);
      const std::string label = "cover seed " + std::to_string(seed);
      const std::size_t best = min_set_cover(sc);
      const Instance s(msc_to_scenario(sc).scenario);
      const auto depth = optimize(s);
      r.expect(depth == std::optional<std::uint64_t>{best}, label + ": optimize " + optional_text(depth) +
                                                                " vs cover " + std::to_string(best));
      const SetCoverInstance back = scenario_to_msc(s);
      r.expect(min_set_cover(back) == best, label + ": round trip changes the optimum");
      const auto greedy = greedy_cover(s);
      r.expect(static_cast<double>(greedy.size()) <=
                   corpus::harmonic(sc.elements.size()) * static_cast<double>(best) + 1e-9,
               label + ": greedy above H(p) * optimum");
      r.expect(greedy.size() >= best, label + ": greedy below the optimum");
    }
  });

  criterion("atm-combinatorics", 1.0, [](Report& r) {
    const std::string path = std::string(ATDP_DATA_DIR) + "/atm_full.json";
    const FactoredCounts counts = count_factored(parse_factored(parse_json_text(read_file(path), path)));
    r.expect(counts.correct == 144, "correct = " + counts.correct.str());
    r.expect(counts.fault_combos == 16664, "fault combinations = " + counts.fault_combos.str());
    r.expect(counts.total == 2399616, "total = " + counts.total.str());
  });

  criterion("discretization", 1.0, [](Report& r) {
    NumericScenario ns;
    ns.inputs = {"a"};
    ns.functions = {{"f", {{"a", {1.4}}}}, {"f_prime", {{"a", {1.5}}}}};
    ns.correct = {"f"};
    ns.margin = 0.2;
    const DiscretizedScenario d = discretize_observations(ns);
    const auto& regions = d.regions.at("a");
    r.expect(regions.size() == 3, "region count " + std::to_string(regions.size()));
    r.expect(d.scenario.functions[0].table.at("a") == std::vector<std::string>{"o1", "o2"}, "image of f");
    r.expect(d.scenario.functions[1].table.at("a") == std::vector<std::string>{"o2", "o3"}, "image of f_prime");
    r.expect(validate_scenario(d.scenario).empty(), "discretized scenario is invalid");
  });

  criterion("structural-properties", 60.0, [](Report& r) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const Instance s(corpus::small(seed + 1000));
      const std::uint64_t n = s.num_inputs();
      for (SearchMode m : {SearchMode::LiteralB1, SearchMode::EarlyStop}) {
        const SolveConfig cfg = with_mode(m);
        std::vector<bool> at;
        for (std::uint64_t k = 0; k <= n + 2; ++k) at.push_back(decide(s, k, cfg));
        for (std::uint64_t k = 0; k + 1 < at.size(); ++k)
          r.expect(!at[k] || at[k + 1], "monotonicity, seed " + std::to_string(seed) + " k " + std::to_string(k));
        for (std::uint64_t k = 0; k < at.size(); ++k)
          r.expect(at[k] == at[std::min(k, n)], "depth cap, seed " + std::to_string(seed) + " k " + std::to_string(k));
        r.expect(decide(s, kHugeK, cfg) == at[n], "huge k, seed " + std::to_string(seed));
      }
    }

    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto instance = std::make_shared<const Instance>(corpus::small(seed + 5000));
      SessionState st = create_session(instance, "replay-" + std::to_string(seed));
      const std::size_t steps = rng() % 5;
      for (std::size_t i = 0; i < steps && st.live(); ++i)
        st = observe(st, instance->input_name(rng() % instance->num_inputs()),
                     instance->output_name(rng() % instance->num_outputs()));
      const SessionState again = replay(instance, st.history, st.id);
      const SessionState twice = replay(instance, st.history, st.id);
      r.expect(again == st && twice == st, "replay differs, sequence " + std::to_string(seed));
    }
  });

  criterion("certificate-check", 5.0, [](Report& r) {
    check_certificate(r, Instance(builtin_cas()), 2, "cas");
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const Instance s(corpus::small(seed + 9000));
      const auto best = optimize(s);
      if (!best) continue;
      check_certificate(r, s, *best, "seed " + std::to_string(seed));
      check_certificate(r, s, s.num_inputs(), "seed " + std::to_string(seed) + " at |I|");
    }
  });

  std::printf("%s: %d criteria failed\n", failed_criteria ? "FAIL" : "PASS", failed_criteria);
  return failed_criteria ? 1 : 0;
}
