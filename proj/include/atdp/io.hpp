#pragma once

// File formats. Every parser throws ParseError naming the offending field or
// line; every emitter produces the canonical form its parser accepts.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "atdp/advisor.hpp"
#include "atdp/generators.hpp"
#include "atdp/model.hpp"
#include "atdp/oracle.hpp"
#include "atdp/session.hpp"
#include "atdp/solver.hpp"

namespace atdp {

using Json = nlohmann::ordered_json;

struct ScenarioDocument {
  Scenario scenario;
  std::optional<std::uint64_t> k;
};

/// Image sets come back sorted in output order. The scenario is validated;
/// the first violation becomes a ParseError such as "functions[2].table.near".
ScenarioDocument parse_scenario(const Json& doc);
ScenarioDocument parse_scenario_text(std::string_view text);

Json scenario_to_json(const Scenario& s, std::optional<std::uint64_t> k = {});
/// Two-space indentation, trailing LF.
std::string dump_scenario(const Scenario& s, std::optional<std::uint64_t> k = {});

/// Non-negative integer of any magnitude, saturated to UINT64_MAX. Accepts
/// JSON numbers and decimal strings.
std::uint64_t parse_count(const Json& value, const std::string& field);
std::uint64_t parse_count_text(std::string_view text, const std::string& field);

/// "k <count>" then one clause per line: literals xj, -xj, yj, -yj.
/// Blank lines and lines starting with '#' are skipped.
QbfFormula parse_qbf(std::string_view text);
std::string format_qbf(const QbfFormula& q);

/// "elements e1 e2 ..." then one "Name: e1 e2 ..." line per set.
SetCoverInstance parse_cover(std::string_view text);
std::string format_cover(const SetCoverInstance& sc);

FactoredSpec parse_factored(const Json& doc);
Json factored_to_json(const FactoredSpec& spec);

NumericScenario parse_numeric(const Json& doc);

Json regions_to_json(const DiscretizedScenario& d);

Json strategy_to_json(const StrategyTree& t);
StrategyTree strategy_from_json(const Json& doc);
/// Graphviz rendering; leaves read "CORRECT {f1, f2}" / "INCORRECT {f4}".
std::string strategy_to_dot(const StrategyTree& t);

/// Infinite scores (infeasible children in exact mode) become null.
Json advice_to_json(const Advice& a);
Json session_to_json(const SessionState& st);
Json history_to_json(const History& h);
History parse_history(const Json& doc, const std::string& field);

Json parse_json_text(std::string_view text, const std::string& what);
/// Whole file; throws Error when it cannot be read.
std::string read_file(const std::string& path);

}  // namespace atdp
