#include "atdp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

namespace atdp {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

const Json& member(const Json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) throw ParseError(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(field.empty() ? key : field + "." + key, "missing");
  return *it;
}

std::string path(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }
std::string path(const std::string& base, std::size_t ix) { return base + "[" + std::to_string(ix) + "]"; }

std::string as_string(const Json& v, const std::string& field) {
  if (!v.is_string()) throw ParseError(field, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> as_strings(const Json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError(field, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], path(field, i)));
  return out;
}

double as_number(const Json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(field, "expected a finite number");
  return d;
}

unsigned as_small_count(const Json& v, const std::string& field) {
  const std::uint64_t n = parse_count(v, field);
  if (n > std::numeric_limits<unsigned>::max()) throw ParseError(field, "too large");
  return static_cast<unsigned>(n);
}

std::string violation_field(const Scenario& s, const Violation& v) {
  auto fn = std::find_if(s.functions.begin(), s.functions.end(), [&](const auto& f) { return f.name == v.function; });
  if (!v.function.empty() && fn != s.functions.end()) {
    const std::string base = path("functions", static_cast<std::size_t>(fn - s.functions.begin()));
    return v.input.empty() ? path(base, "name") : path(path(base, "table"), v.input);
  }
  if (v.message.find("correct") != std::string::npos) return "correct";
  if (v.message.find("input") != std::string::npos) return "inputs";
  if (v.message.find("output") != std::string::npos) return "outputs";
  return "functions";
}

std::vector<std::string> split_words(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

// Lines with their 1-based numbers, skipping blanks and comments.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream is{std::string(text)};
  std::size_t n = 0;
  for (std::string line; std::getline(is, line);) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    out.emplace_back(n, line);
  }
  return out;
}

std::string line_field(std::size_t n) { return "line " + std::to_string(n); }

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string verdict_label(Verdict v) {
  switch (v) {
    case Verdict::Correct: return "CORRECT";
    case Verdict::Incorrect: return "INCORRECT";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "?";
}

std::string iso_time(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

std::uint64_t parse_count_text(std::string_view text, const std::string& field) {
  if (text.empty()) throw ParseError(field, "expected a non-negative integer");
  std::uint64_t v = 0;
  bool saturated = false;
  for (char c : text) {
    if (c < '0' || c > '9') throw ParseError(field, "expected a non-negative integer, got '" + std::string(text) + "'");
    const unsigned d = static_cast<unsigned>(c - '0');
    if (v > (kSaturated - d) / 10) saturated = true;
    else v = v * 10 + d;
  }
  return saturated ? kSaturated : v;
}

std::uint64_t parse_count(const Json& value, const std::string& field) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) {
    const auto v = value.get<std::int64_t>();
    if (v < 0) throw ParseError(field, "must be non-negative");
    return static_cast<std::uint64_t>(v);
  }
  if (value.is_number_float()) {
    // Integers beyond 64 bits arrive as doubles.
    const double d = value.get<double>();
    if (!std::isfinite(d) || d < 0 || std::floor(d) != d) throw ParseError(field, "expected a non-negative integer");
    return d >= 18446744073709551616.0 ? kSaturated : static_cast<std::uint64_t>(d);
  }
  if (value.is_string()) return parse_count_text(value.get<std::string>(), field);
  throw ParseError(field, "expected a non-negative integer");
}

ScenarioDocument parse_scenario(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  ScenarioDocument out;
  Scenario& s = out.scenario;
  s.inputs = as_strings(member(doc, "inputs", ""), "inputs");
  s.outputs = as_strings(member(doc, "outputs", ""), "outputs");
  std::map<std::string, std::size_t> rank;
  for (std::size_t o = 0; o < s.outputs.size(); ++o) rank.emplace(s.outputs[o], o);

  const Json& fns = member(doc, "functions", "");
  if (!fns.is_array()) throw ParseError("functions", "expected an array");
  for (std::size_t f = 0; f < fns.size(); ++f) {
    const std::string base = path("functions", f);
    BehaviorFunction fn;
    fn.name = as_string(member(fns[f], "name", base), path(base, "name"));
    const Json& table = member(fns[f], "table", base);
    if (!table.is_object()) throw ParseError(path(base, "table"), "expected an object");
    for (const auto& [input, image] : table.items()) {
      auto outs = as_strings(image, path(path(base, "table"), input));
      std::stable_sort(outs.begin(), outs.end(), [&](const auto& a, const auto& b) {
        auto ra = rank.find(a), rb = rank.find(b);
        return (ra == rank.end() ? rank.size() : ra->second) < (rb == rank.end() ? rank.size() : rb->second);
      });
      outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
      fn.table[input] = std::move(outs);
    }
    s.functions.push_back(std::move(fn));
  }
  s.correct = as_strings(member(doc, "correct", ""), "correct");
  if (auto it = doc.find("k"); it != doc.end() && !it->is_null()) out.k = parse_count(*it, "k");

  const auto violations = validate_scenario(s);
  if (!violations.empty()) throw ParseError(violation_field(s, violations.front()), violations.front().describe());
  return out;
}

ScenarioDocument parse_scenario_text(std::string_view text) { return parse_scenario(parse_json_text(text, "scenario")); }

Json scenario_to_json(const Scenario& s, std::optional<std::uint64_t> k) {
  Json doc;
  doc["inputs"] = s.inputs;
  doc["outputs"] = s.outputs;
  doc["functions"] = Json::array();
  for (const auto& f : s.functions) {
    Json table = Json::object();
    for (const auto& i : s.inputs)
      if (auto it = f.table.find(i); it != f.table.end()) table[i] = it->second;
    doc["functions"].push_back(Json{{"name", f.name}, {"table", std::move(table)}});
  }
  doc["correct"] = s.correct;
  if (k) doc["k"] = *k;
  return doc;
}

std::string dump_scenario(const Scenario& s, std::optional<std::uint64_t> k) {
  return scenario_to_json(s, k).dump(2) + "\n";
}

// ---------------------------------------------------------------------------

QbfFormula parse_qbf(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("line 1", "expected 'k <count>'");
  const auto header = split_words(lines[0].second);
  if (header.size() != 2 || header[0] != "k") throw ParseError(line_field(lines[0].first), "expected 'k <count>'");
  QbfFormula q;
  const std::uint64_t k = parse_count_text(header[1], line_field(lines[0].first));
  if (k > 64) throw ParseError(line_field(lines[0].first), "k above 64 is not supported");
  q.k = static_cast<unsigned>(k);

  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::string field = line_field(lines[l].first);
    Clause clause;
    for (const auto& w : split_words(lines[l].second)) {
      std::string_view t = w;
      Literal lit;
      if (!t.empty() && t.front() == '-') {
        lit.negated = true;
        t.remove_prefix(1);
      }
      if (t.empty() || (t.front() != 'x' && t.front() != 'y')) throw ParseError(field, "bad literal '" + w + "'");
      lit.kind = t.front() == 'x' ? Literal::Kind::X : Literal::Kind::Y;
      t.remove_prefix(1);
      const std::uint64_t var = parse_count_text(t, field);
      if (var < 1 || var > q.k) throw ParseError(field, "variable index out of range in '" + w + "'");
      lit.var = static_cast<unsigned>(var);
      clause.push_back(lit);
    }
    q.clauses.push_back(std::move(clause));
  }
  return normalize(std::move(q));
}

std::string format_qbf(const QbfFormula& q) {
  std::string out = "k " + std::to_string(q.k) + "\n";
  for (const auto& c : q.clauses) {
    std::vector<std::string> words;
    for (const auto& l : c) words.push_back(to_string(l));
    out += join(words, " ") + "\n";
  }
  return out;
}

SetCoverInstance parse_cover(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("line 1", "expected 'elements ...'");
  auto header = split_words(lines[0].second);
  if (header.empty() || header[0] != "elements") throw ParseError(line_field(lines[0].first), "expected 'elements ...'");
  SetCoverInstance sc;
  sc.elements.assign(header.begin() + 1, header.end());
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::string& line = lines[l].second;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(line_field(lines[l].first), "expected 'Name: e1 e2 ...'");
    const auto name = split_words(line.substr(0, colon));
    if (name.size() != 1) throw ParseError(line_field(lines[l].first), "set name must be one word");
    sc.sets.push_back({name[0], split_words(line.substr(colon + 1))});
  }
  if (auto problems = validate_cover(sc); !problems.empty()) throw ParseError("cover", problems.front());
  return sc;
}

std::string format_cover(const SetCoverInstance& sc) {
  std::string out = "elements";
  for (const auto& e : sc.elements) out += " " + e;
  out += "\n";
  for (const auto& s : sc.sets) {
    out += s.name + ":";
    for (const auto& e : s.members) out += " " + e;
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

FactoredSpec parse_factored(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  FactoredSpec spec;
  spec.inputs = as_strings(member(doc, "inputs", ""), "inputs");
  spec.outputs = as_strings(member(doc, "outputs", ""), "outputs");

  auto named_lists = [&](const char* key) {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    const Json& arr = member(doc, key, "");
    if (!arr.is_array()) throw ParseError(key, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string base = path(key, i);
      out.emplace_back(as_string(member(arr[i], "name", base), path(base, "name")),
                       as_strings(member(arr[i], "options", base), path(base, "options")));
    }
    return out;
  };
  for (auto& [name, options] : named_lists("axes")) spec.axes.push_back({name, options});
  if (doc.contains("fault_families"))
    for (auto& [name, options] : named_lists("fault_families")) spec.fault_families.push_back({name, options});
  if (doc.contains("max_faults")) spec.max_faults = as_small_count(doc["max_faults"], "max_faults");

  const Json& rules = member(doc, "behavior", "");
  if (!rules.is_array()) throw ParseError("behavior", "expected an array");
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const std::string base = path("behavior", r);
    BehaviorRule rule;
    rule.input = as_string(member(rules[r], "input", base), path(base, "input"));
    rule.outputs = as_strings(member(rules[r], "outputs", base), path(base, "outputs"));
    if (auto it = rules[r].find("when"); it != rules[r].end()) {
      if (!it->is_object()) throw ParseError(path(base, "when"), "expected an object");
      for (const auto& [axis, option] : it->items()) rule.when[axis] = as_string(option, path(path(base, "when"), axis));
    }
    if (auto it = rules[r].find("fault"); it != rules[r].end() && !it->is_null())
      rule.fault = as_string(*it, path(base, "fault"));
    spec.behavior.push_back(std::move(rule));
  }
  if (auto problems = validate_factored(spec); !problems.empty()) throw ParseError("spec", problems.front());
  return spec;
}

Json factored_to_json(const FactoredSpec& spec) {
  Json doc;
  doc["inputs"] = spec.inputs;
  doc["outputs"] = spec.outputs;
  doc["axes"] = Json::array();
  for (const auto& a : spec.axes) doc["axes"].push_back(Json{{"name", a.name}, {"options", a.options}});
  doc["fault_families"] = Json::array();
  for (const auto& f : spec.fault_families)
    doc["fault_families"].push_back(Json{{"name", f.name}, {"options", f.options}});
  doc["max_faults"] = spec.max_faults;
  doc["behavior"] = Json::array();
  for (const auto& r : spec.behavior) {
    Json rule{{"input", r.input}};
    if (!r.when.empty()) rule["when"] = r.when;
    if (r.fault) rule["fault"] = *r.fault;
    rule["outputs"] = r.outputs;
    doc["behavior"].push_back(std::move(rule));
  }
  return doc;
}

NumericScenario parse_numeric(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  NumericScenario ns;
  ns.inputs = as_strings(member(doc, "inputs", ""), "inputs");
  const Json& fns = member(doc, "functions", "");
  if (!fns.is_array()) throw ParseError("functions", "expected an array");
  for (std::size_t f = 0; f < fns.size(); ++f) {
    const std::string base = path("functions", f);
    NumericFunction fn;
    fn.name = as_string(member(fns[f], "name", base), path(base, "name"));
    const Json& table = member(fns[f], "table", base);
    if (!table.is_object()) throw ParseError(path(base, "table"), "expected an object");
    for (const auto& [input, values] : table.items()) {
      const std::string field = path(path(base, "table"), input);
      if (!values.is_array() || values.empty()) throw ParseError(field, "expected a non-empty array of numbers");
      for (std::size_t v = 0; v < values.size(); ++v) fn.table[input].push_back(as_number(values[v], path(field, v)));
    }
    for (const auto& i : ns.inputs)
      if (!fn.table.count(i)) throw ParseError(path(path(base, "table"), i), "no values defined");
    ns.functions.push_back(std::move(fn));
  }
  ns.correct = as_strings(member(doc, "correct", ""), "correct");
  ns.margin = as_number(member(doc, "margin", ""), "margin");
  if (ns.margin < 0) throw ParseError("margin", "must be non-negative");
  return ns;
}

Json regions_to_json(const DiscretizedScenario& d) {
  Json out = Json::object();
  for (const auto& input : d.scenario.inputs) {
    Json list = Json::array();
    for (const auto& r : d.regions.at(input))
      list.push_back(Json{{"symbol", r.symbol}, {"interval", r.describe()}, {"functions", r.functions}});
    out[input] = std::move(list);
  }
  return out;
}

// ---------------------------------------------------------------------------

Json strategy_to_json(const StrategyTree& t) {
  if (t.is_leaf()) return Json{{"verdict", verdict_label(t.leaf().verdict)}, {"consistent", t.leaf().consistent}};
  Json edges = Json::array();
  for (const auto& e : t.branch().edges) edges.push_back(Json{{"output", e.output}, {"child", strategy_to_json(e.child)}});
  return Json{{"input", t.branch().input}, {"edges", std::move(edges)}};
}

namespace {

StrategyTree strategy_from_json_at(const Json& doc, const std::string& field) {
  if (!doc.is_object()) throw ParseError(field, "expected an object");
  StrategyTree t;
  if (doc.contains("verdict")) {
    StrategyLeaf leaf;
    const std::string v = as_string(doc["verdict"], path(field, "verdict"));
    if (v == "CORRECT") leaf.verdict = Verdict::Correct;
    else if (v == "INCORRECT") leaf.verdict = Verdict::Incorrect;
    else if (v == "UNDECIDED") leaf.verdict = Verdict::Undecided;
    else throw ParseError(path(field, "verdict"), "unknown verdict '" + v + "'");
    leaf.consistent = as_strings(member(doc, "consistent", field), path(field, "consistent"));
    t.node = std::move(leaf);
    return t;
  }
  StrategyBranch b;
  b.input = as_string(member(doc, "input", field), path(field, "input"));
  const Json& edges = member(doc, "edges", field);
  if (!edges.is_array()) throw ParseError(path(field, "edges"), "expected an array");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string ef = path(path(field, "edges"), e);
    b.edges.push_back({as_string(member(edges[e], "output", ef), path(ef, "output")),
                       strategy_from_json_at(member(edges[e], "child", ef), path(ef, "child"))});
  }
  t.node = std::move(b);
  return t;
}

void dot_node(const StrategyTree& t, std::size_t& next, std::ostringstream& os) {
  const std::size_t id = next++;
  auto quote = [](const std::string& s) { return Json(s).dump(); };
  if (t.is_leaf()) {
    const auto& leaf = t.leaf();
    os << "  n" << id << " [shape=box, label=" << quote(verdict_label(leaf.verdict) + " {" + join(leaf.consistent, ", ") + "}")
       << "];\n";
    return;
  }
  os << "  n" << id << " [shape=ellipse, label=" << quote(t.branch().input) << "];\n";
  for (const auto& e : t.branch().edges) {
    const std::size_t child = next;
    dot_node(e.child, next, os);
    os << "  n" << id << " -> n" << child << " [label=" << quote(e.output) << "];\n";
  }
}

}  // namespace

StrategyTree strategy_from_json(const Json& doc) { return strategy_from_json_at(doc, "tree"); }

std::string strategy_to_dot(const StrategyTree& t) {
  std::ostringstream os;
  os << "digraph strategy {\n";
  std::size_t next = 0;
  dot_node(t, next, os);
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------

Json advice_to_json(const Advice& a) {
  Json ranked = Json::array();
  for (const auto& r : a.ranked) {
    Json item{{"input", r.input}, {"score", nullptr}, {"exact", r.exact}};
    if (std::isfinite(r.score)) item["score"] = r.score;
    else item["infeasible"] = true;
    ranked.push_back(std::move(item));
  }
  return Json{{"ranked", std::move(ranked)},
              {"depth_used", a.depth_used},
              {"nodes_expanded", a.nodes_expanded},
              {"budget_exhausted", a.budget_exhausted},
              {"fallback", a.fallback}};
}

Json history_to_json(const History& h) {
  Json out = Json::array();
  for (const auto& step : h) out.push_back(Json{{"input", step.input}, {"output", step.output}});
  return out;
}

History parse_history(const Json& doc, const std::string& field) {
  if (!doc.is_array()) throw ParseError(field, "expected an array of {input, output}");
  History h;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string f = path(field, i);
    h.push_back({as_string(member(doc[i], "input", f), path(f, "input")),
                 as_string(member(doc[i], "output", f), path(f, "output"))});
  }
  return h;
}

Json session_to_json(const SessionState& st) {
  const Instance& s = *st.instance;
  Json out;
  out["id"] = st.id;
  out["status"] = std::string(to_string(st.status));
  out["history"] = history_to_json(st.history);
  out["consistent"] = s.function_names(st.consistent);
  out["correct"] = s.function_names(st.consistent & s.correct_set());
  out["incorrect"] = s.function_names(st.consistent & s.incorrect_set());
  out["heuristic"] = st.consistent.any() ? Json(heuristic_value(s, st.consistent)) : Json(nullptr);
  out["violation"] = st.violation ? Json{{"input", st.violation->input}, {"output", st.violation->output}} : Json(nullptr);
  out["scenario"] = Json{{"inputs", s.scenario().inputs},
                         {"outputs", s.scenario().outputs},
                         {"functions", s.num_functions()},
                         {"correct", s.correct_set().count()}};
  out["created"] = iso_time(st.created);
  out["updated"] = iso_time(st.updated);
  return out;
}

// ---------------------------------------------------------------------------

Json parse_json_text(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what, std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read '" + file + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace atdp
