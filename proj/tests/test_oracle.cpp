#include <doctest.h>

#include <algorithm>
#include <random>

#include "atdp/generators.hpp"
#include "atdp/oracle.hpp"
#include "atdp/solver.hpp"
#include "corpus.hpp"

using namespace atdp;

namespace {

Literal x(unsigned v, bool neg = false) { return {Literal::Kind::X, v, neg}; }
Literal y(unsigned v, bool neg = false) { return {Literal::Kind::Y, v, neg}; }

}  // namespace

TEST_CASE("min_depth on the collision-avoidance family") {
  CHECK(min_depth(builtin_cas()) == 2u);
  CHECK_FALSE(min_depth(cas_variant(CasVariant::F7BrakeNondet)).has_value());
  CHECK(min_depth(cas_variant(CasVariant::F7Nothing)) == 2u);
  Scenario all = builtin_cas();
  all.correct = {};
  CHECK(min_depth(all) == 0u);
}

TEST_CASE("min_depth size guard") {
  CHECK_THROWS_AS(min_depth(random_scenario({1, 7, 2, 4, 1, 0.0})), SizeGuardExceeded);
  CHECK_THROWS_AS(min_depth(random_scenario({1, 2, 2, 20, 1, 0.0})), SizeGuardExceeded);
  CHECK_NOTHROW(min_depth(random_scenario({1, 7, 2, 4, 1, 0.0}), {8, 12}));
}

TEST_CASE("min_depth agrees with optimize on every small scenario") {
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    const Scenario s = corpus::small(seed, 4, 8);
    CAPTURE(seed);
    const auto expected = optimize(s);
    const auto got = min_depth(s);
    CHECK(got.has_value() == expected.has_value());
    if (got && expected) CHECK(*got == *expected);
  }
}

TEST_CASE("qbf_eval examples") {
  CHECK(qbf_eval({2, {{x(2), y(1, true)}, {x(2, true), y(1)}}}));
  CHECK_FALSE(qbf_eval({2, {{x(1), y(2, true)}, {x(1, true), y(2)}}}));
  CHECK_FALSE(qbf_eval({1, {{y(1)}}}));
  CHECK(qbf_eval({1, {{x(1)}}}));
  CHECK(qbf_eval({1, {}}));
  CHECK(qbf_eval({1, {{y(1), y(1, true)}}}));
}

TEST_CASE("qbf_eval is invariant under clause and literal reordering") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    QbfFormula q{2, {}};
    const std::size_t n = 1 + rng() % 3;
    for (std::size_t c = 0; c < n; ++c) {
      Clause clause;
      const std::size_t len = 1 + rng() % 3;
      for (std::size_t l = 0; l < len; ++l)
        clause.push_back({rng() % 2 ? Literal::Kind::X : Literal::Kind::Y, static_cast<unsigned>(1 + rng() % 2),
                          rng() % 2 == 0});
      q.clauses.push_back(clause);
    }
    QbfFormula shuffled = q;
    std::shuffle(shuffled.clauses.begin(), shuffled.clauses.end(), rng);
    for (auto& c : shuffled.clauses) std::shuffle(c.begin(), c.end(), rng);
    CHECK(qbf_eval(q) == qbf_eval(shuffled));
  }
}

TEST_CASE("normalize") {
  const QbfFormula q = normalize({2, {{y(1), x(2), y(1)}}});
  REQUIRE(q.clauses.size() == 1);
  CHECK(q.clauses[0] == Clause{x(2), y(1)});
  CHECK_THROWS_AS(normalize({1, {{}}}), std::invalid_argument);
  CHECK_THROWS_AS(normalize({1, {{x(2)}}}), std::invalid_argument);
  CHECK(to_string(x(3, true)) == "-x3");
  CHECK(to_string(y(1)) == "y1");
}

TEST_CASE("min_set_cover") {
  CHECK(min_set_cover({{"e1", "e2"}, {{"a", {"e1"}}, {"b", {"e2"}}, {"c", {"e1", "e2"}}}}) == 1);
  CHECK(min_set_cover({{"e1", "e2"}, {{"a", {"e1"}}, {"b", {"e2"}}}}) == 2);
  CHECK_THROWS_AS(min_set_cover({{"e1", "e2"}, {{"a", {"e1"}}}}), std::invalid_argument);
  SetCoverInstance big;
  big.elements = {"e"};
  for (int i = 0; i < 13; ++i) big.sets.push_back({"s" + std::to_string(i), {"e"}});
  CHECK_THROWS_AS(min_set_cover(big), SizeGuardExceeded);
}

TEST_CASE("validate_cover") {
  CHECK(validate_cover({{"e1"}, {{"a", {"e1"}}}}).empty());
  CHECK_FALSE(validate_cover({{"e1"}, {{"a", {"e2"}}}}).empty());
  CHECK_FALSE(validate_cover({{"e1", "e1"}, {{"a", {"e1"}}}}).empty());
  CHECK_FALSE(validate_cover({{"e1"}, {{"a", {"e1"}}, {"a", {"e1"}}}}).empty());
}
