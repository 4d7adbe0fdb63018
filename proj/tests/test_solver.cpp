#include <doctest.h>

#include <functional>
#include <limits>

#include "atdp/generators.hpp"
#include "atdp/solver.hpp"
#include "corpus.hpp"

using namespace atdp;

namespace {

SolveConfig with(SearchMode mode, bool memoize, std::vector<std::string> prefix = {}) {
  SolveConfig cfg;
  cfg.mode = mode;
  cfg.memoize = memoize;
  cfg.forced_prefix = std::move(prefix);
  return cfg;
}

const SearchMode kModes[] = {SearchMode::LiteralB1, SearchMode::EarlyStop};

}  // namespace

TEST_CASE("collision-avoidance decisions") {
  const Instance cas = builtin_cas();
  for (SearchMode mode : kModes)
    for (bool memo : {true, false}) {
      CAPTURE(memo);
      const auto cfg = with(mode, memo);
      CHECK(decide(cas, 2, cfg));
      CHECK_FALSE(decide(cas, 1, cfg));
      CHECK_FALSE(decide(cas, 0, cfg));
      CHECK(decide(cas, std::numeric_limits<std::uint64_t>::max(), cfg));
      CHECK(optimize(cas, cfg) == 2u);
    }
}

TEST_CASE("a bad first test costs one more test") {
  const Instance cas = builtin_cas();
  for (SearchMode mode : kModes)
    for (bool memo : {true, false})
      for (const char* first : {"near", "far"}) {
        CAPTURE(first);
        CHECK_FALSE(decide(cas, 2, with(mode, memo, {first})));
        CHECK(decide(cas, 3, with(mode, memo, {first})));
      }
  CHECK(decide(cas, 2, with(SearchMode::EarlyStop, true, {"inter"})));
  CHECK(decide(cas, 2, with(SearchMode::EarlyStop, true, {"inter", "far"})) == false);
}

TEST_CASE("forced prefix errors") {
  const Instance cas = builtin_cas();
  CHECK_THROWS_AS(decide(cas, 3, with(SearchMode::EarlyStop, true, {"near", "near"})), std::invalid_argument);
  CHECK_THROWS_AS(decide(cas, 3, with(SearchMode::EarlyStop, true, {"sideways"})), UnknownSymbol);
}

TEST_CASE("f7 variants") {
  CHECK(optimize(cas_variant(CasVariant::F7Nothing)) == 2u);
  CHECK_FALSE(optimize(cas_variant(CasVariant::F7BrakeNondet)).has_value());
  CHECK_FALSE(decide(cas_variant(CasVariant::F7BrakeNondet), 3));
}

TEST_CASE("E = C is decided with no tests") {
  Scenario s = builtin_cas();
  s.correct.clear();
  for (const auto& f : s.functions) s.correct.push_back(f.name);
  CHECK(optimize(s) == 0u);
  const StrategyTree t = extract_strategy(s, 0);
  REQUIRE(t.is_leaf());
  CHECK(t.leaf().verdict == Verdict::Correct);
  CHECK(t.leaf().consistent.size() == 13);
}

TEST_CASE("node budget aborts the search") {
  SolveConfig cfg;
  cfg.node_budget = 3;
  CHECK_THROWS_AS(decide(builtin_cas(), 3, cfg), BudgetExhausted);
}

TEST_CASE("extracted strategy reproduces the two-test tree") {
  const Instance cas = builtin_cas();
  const StrategyTree t = extract_strategy(cas, 2);
  CHECK(t == corpus::cas_tree());
  CHECK(t.depth() == 2);
  CHECK(t.leaf_count() == 8);
  CHECK(validate_strategy(cas, t, 2));
  CHECK_FALSE(validate_strategy(cas, t, 1));
  CHECK_THROWS_AS(extract_strategy(cas, 1), NoStrategy);
}

TEST_CASE("validate_strategy rejects defects") {
  const Instance cas = builtin_cas();
  CHECK(validate_strategy(cas, corpus::cas_tree(), 2));

  SUBCASE("flipped leaf verdict") {
    auto t = corpus::cas_tree();
    t.branch().edges[1].child.branch().edges[2].child.leaf().verdict = Verdict::Incorrect;
    CHECK_FALSE(validate_strategy(cas, t, 2));
  }
  SUBCASE("missing both edge") {
    auto t = corpus::cas_tree();
    t.branch().edges.pop_back();
    CHECK_FALSE(validate_strategy(cas, t, 2));
  }
  SUBCASE("extra edge") {
    auto t = corpus::cas_tree();
    t.branch().edges[1].child.branch().edges.push_back({"both", corpus::leaf(Verdict::Incorrect, {"f7"})});
    CHECK_FALSE(validate_strategy(cas, t, 2));
  }
  SUBCASE("repeated input") {
    auto t = corpus::cas_tree();
    t.branch().edges[1].child.branch().input = "inter";
    CHECK_FALSE(validate_strategy(cas, t, 3));
  }
  SUBCASE("wrong leaf names") {
    auto t = corpus::cas_tree();
    t.branch().edges[3].child.leaf().consistent = {"f5"};
    CHECK(strategy_defect(cas, t, 2).has_value());
  }
  SUBCASE("leaf that is not a verdict") {
    CHECK_FALSE(validate_strategy(cas, corpus::leaf(Verdict::Undecided, consistent_set(cas, {})), 2));
  }
}

TEST_CASE("mode and engine equivalence on random scenarios") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Instance s = corpus::small(seed, 4, 8);
    CAPTURE(seed);
    for (std::uint64_t k = 0; k <= 4; ++k) {
      const bool reference = decide(s, k, with(SearchMode::EarlyStop, true));
      CHECK(decide(s, k, with(SearchMode::LiteralB1, true)) == reference);
      CHECK(decide(s, k, with(SearchMode::LiteralB1, false)) == reference);
      CHECK(decide(s, k, with(SearchMode::EarlyStop, false)) == reference);
    }
  }
}

TEST_CASE("forced prefixes agree across engines") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const Instance s = corpus::small(seed, 4, 8);
    CAPTURE(seed);
    const std::vector<std::string> prefix{s.input_name(s.num_inputs() - 1)};
    for (std::uint64_t k = 0; k <= 4; ++k) {
      const bool reference = decide(s, k, with(SearchMode::EarlyStop, true, prefix));
      CHECK(decide(s, k, with(SearchMode::LiteralB1, false, prefix)) == reference);
      CHECK(decide(s, k, with(SearchMode::EarlyStop, false, prefix)) == reference);
      // Restricting the first move can only hurt.
      if (reference) CHECK(decide(s, k));
    }
  }
}

TEST_CASE("monotone in k and capped at |I|") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance s = corpus::small(seed, 4, 8);
    CAPTURE(seed);
    for (std::uint64_t k = 0; k < 6; ++k)
      if (decide(s, k)) CHECK(decide(s, k + 1));
    CHECK(decide(s, 1000) == decide(s, s.num_inputs()));
  }
}

TEST_CASE("extraction at the optimum matches its depth and validates") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance s = corpus::small(seed, 4, 8);
    CAPTURE(seed);
    const auto best = optimize(s);
    if (!best) {
      CHECK_THROWS_AS(extract_strategy(s, s.num_inputs()), NoStrategy);
      continue;
    }
    const StrategyTree t = extract_strategy(s, *best);
    CHECK(t.depth() == *best);
    CHECK(validate_strategy(s, t, *best));
  }
}

TEST_CASE("deterministic strategies have disjoint leaves") {
  for (std::uint64_t seed = 1; seed <= 199; seed += 2) {
    const Instance s = corpus::small(seed, 4, 8);
    REQUIRE(s.deterministic());
    const auto best = optimize(s);
    if (!best) continue;
    std::vector<IndexSet> leaves;
    std::function<void(const StrategyTree&)> walk = [&](const StrategyTree& t) {
      if (t.is_leaf()) return leaves.push_back(s.function_set(t.leaf().consistent));
      for (const auto& e : t.branch().edges) walk(e.child);
    };
    walk(extract_strategy(s, *best));
    IndexSet seen(s.num_functions());
    for (const auto& l : leaves) {
      CHECK_FALSE(l.intersects(seen));
      seen |= l;
    }
    CHECK(seen == s.all_functions());
  }
}
