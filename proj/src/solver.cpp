#include "atdp/solver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "search.hpp"

namespace atdp {

namespace detail {

Search::Search(const Instance& s, const SolveConfig& cfg) : s_(s), cfg_(cfg) {
  std::set<std::size_t> seen;
  for (const auto& label : cfg_.forced_prefix) {
    const std::size_t i = s_.input_index(label);
    if (!seen.insert(i).second)
      throw std::invalid_argument("forced prefix repeats input '" + label + "'");
    prefix_.push_back(i);
  }
}

unsigned Search::clamp(std::uint64_t k) const {
  return static_cast<unsigned>(std::min<std::uint64_t>(k, s_.num_inputs()));
}

void Search::count_node() {
  ++stats_.nodes;
  if (cfg_.node_budget && stats_.nodes > *cfg_.node_budget)
    throw BudgetExhausted("node budget of " + std::to_string(*cfg_.node_budget) + " exhausted");
}

bool Search::admissible(std::size_t input, const IndexSet& used, unsigned level) const {
  if (level < prefix_.size()) return input == prefix_[level];
  return !used.test(input);
}

std::vector<std::size_t> Search::candidates(const IndexSet& used, unsigned level) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s_.num_inputs(); ++i)
    if (admissible(i, used, level)) out.push_back(i);
  return out;
}

bool Search::decide(std::uint64_t k) {
  const unsigned depth = clamp(k);
  const IndexSet all = s_.all_functions();
  if (depth == 0) return s_.verdict_forced(all);
  if (cfg_.memoize) return wins(all, s_.no_inputs(), depth, 0);
  return run_machine(depth);
}

bool Search::input_wins(const IndexSet& cs, const IndexSet& used, std::size_t input,
                        unsigned remaining, unsigned level) {
  IndexSet next_used = used;
  next_used.set(input);
  for (std::size_t o : s_.outputs_of(cs, input))
    if (!wins(cs & s_.producers(input, o), next_used, remaining - 1, level + 1)) return false;
  return true;
}

bool Search::wins(const IndexSet& cs, const IndexSet& used, unsigned remaining, unsigned level) {
  count_node();
  const bool forced = s_.verdict_forced(cs);
  if (remaining == 0) return forced;
  if (forced && early_stop()) return true;

  const bool cacheable = cfg_.memoize && level >= prefix_.size();
  if (cacheable) {
    if (auto it = memo_.find(Key{cs, used, remaining}); it != memo_.end()) return it->second;
  }

  bool result = false;
  for (std::size_t i = 0; i < s_.num_inputs() && !result; ++i)
    if (admissible(i, used, level)) result = input_wins(cs, used, i, remaining, level);

  if (cacheable && memo_.size() < cfg_.max_memo_entries) {
    memo_.emplace(Key{cs, used, remaining}, result);
    stats_.memo_entries = memo_.size();
  }
  return result;
}

// The machine keeps, for levels 1..depth, the applied input, the observed
// output and the resulting consistent set. Level l is "live" for l <= cur.
// Inputs are tried in order; once a leaf fails, the deepest level that still
// has an untried input advances it. Once a leaf succeeds, the deepest level
// that still has an untried output advances it.
bool Search::run_machine(unsigned depth) {
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> in(depth + 1, none), out(depth + 1, none);
  std::vector<IndexSet> cs(depth + 1);
  cs[0] = s_.all_functions();

  auto used_below = [&](unsigned l) {
    IndexSet used = s_.no_inputs();
    for (unsigned m = 1; m < l; ++m) used.set(in[m]);
    return used;
  };
  auto next_input = [&](unsigned l, std::size_t after) -> std::size_t {
    const IndexSet used = used_below(l);
    for (std::size_t a = (after == none ? 0 : after + 1); a < s_.num_inputs(); ++a)
      if (admissible(a, used, l - 1)) return a;
    return none;
  };
  auto next_output = [&](unsigned l, std::size_t after) -> std::size_t {
    for (std::size_t o = (after == none ? 0 : after + 1); o < s_.num_outputs(); ++o)
      if (s_.producers(in[l], o).intersects(cs[l - 1])) return o;
    return none;
  };
  auto apply_output = [&](unsigned l) {
    count_node();
    cs[l] = cs[l - 1] & s_.producers(in[l], out[l]);
  };

  enum class Step { ChooseInput, ChooseOutput, Evaluate };
  unsigned l = 1;
  Step step = Step::ChooseInput;
  for (;;) {
    switch (step) {
      case Step::ChooseInput:
        in[l] = next_input(l, none);
        step = Step::ChooseOutput;
        break;
      case Step::ChooseOutput:
        out[l] = next_output(l, none);
        apply_output(l);
        step = Step::Evaluate;
        break;
      case Step::Evaluate: {
        const bool forced = s_.verdict_forced(cs[l]);
        if (l < depth && !(forced && early_stop())) {
          ++l;
          step = Step::ChooseInput;
          break;
        }
        if (forced) {
          while (l > 0 && next_output(l, out[l]) == none) --l;
          if (l == 0) return true;
          out[l] = next_output(l, out[l]);
          apply_output(l);
          step = Step::Evaluate;
        } else {
          while (l > 0 && next_input(l, in[l]) == none) --l;
          if (l == 0) return false;
          in[l] = next_input(l, in[l]);
          step = Step::ChooseOutput;
        }
        break;
      }
    }
  }
}

}  // namespace detail

std::size_t StrategyTree::depth() const {
  if (is_leaf()) return 0;
  std::size_t d = 0;
  for (const auto& e : branch().edges) d = std::max(d, e.child.depth());
  return d + 1;
}

std::size_t StrategyTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& e : branch().edges) n += e.child.leaf_count();
  return n;
}

bool decide(const Instance& s, std::uint64_t k, const SolveConfig& cfg, SearchStats* stats) {
  detail::Search search(s, cfg);
  const bool result = search.decide(k);
  if (stats) *stats = search.stats();
  return result;
}

std::optional<std::uint64_t> optimize(const Instance& s, const SolveConfig& cfg) {
  detail::Search search(s, cfg);
  for (std::uint64_t k = 0; k <= s.num_inputs(); ++k)
    if (search.decide(k)) return k;
  return std::nullopt;
}

namespace {

StrategyTree build(detail::Search& search, const IndexSet& cs, const IndexSet& used,
                   unsigned remaining, unsigned level) {
  const Instance& s = search.instance();
  if (s.verdict_forced(cs)) return {StrategyLeaf{s.verdict(cs), s.function_names(cs)}};
  for (std::size_t i : search.candidates(used, level)) {
    if (remaining == 0 || !search.input_wins(cs, used, i, remaining, level)) continue;
    StrategyBranch b{s.input_name(i), {}};
    IndexSet next_used = used;
    next_used.set(i);
    for (std::size_t o : s.outputs_of(cs, i))
      b.edges.push_back({s.output_name(o),
                         build(search, cs & s.producers(i, o), next_used, remaining - 1, level + 1)});
    return {std::move(b)};
  }
  throw NoStrategy("no winning input at a position the search reported as winning");
}

std::optional<std::string> check(const Instance& s, const StrategyTree& t, const IndexSet& cs,
                                 const IndexSet& used, std::uint64_t depth, std::uint64_t k,
                                 const std::string& path) {
  if (t.is_leaf()) {
    const auto& leaf = t.leaf();
    if (!s.verdict_forced(cs)) return "leaf at " + path + " does not force a verdict";
    if (leaf.verdict != s.verdict(cs))
      return "leaf at " + path + " claims " + std::string(to_string(leaf.verdict)) +
             " but its candidates are " + std::string(to_string(s.verdict(cs)));
    if (leaf.consistent != s.function_names(cs))
      return "leaf at " + path + " lists a consistent set that differs from the observations";
    return std::nullopt;
  }
  const auto& b = t.branch();
  const auto input = s.find_input(b.input);
  if (!input) return "unknown input '" + b.input + "' at " + path;
  if (used.test(*input)) return "input '" + b.input + "' repeated at " + path;
  if (depth + 1 > k) return "depth exceeds " + std::to_string(k) + " at " + path;

  std::vector<std::size_t> labels;
  for (const auto& e : b.edges) {
    const auto o = s.find_output(e.output);
    if (!o) return "unknown output '" + e.output + "' at " + path;
    labels.push_back(*o);
  }
  std::vector<std::size_t> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return "duplicate edge under '" + b.input + "' at " + path;
  if (sorted != s.outputs_of(cs, *input))
    return "edges under '" + b.input + "' at " + path + " do not match the producible outputs";

  IndexSet next_used = used;
  next_used.set(*input);
  for (std::size_t e = 0; e < b.edges.size(); ++e) {
    auto defect = check(s, b.edges[e].child, cs & s.producers(*input, labels[e]), next_used, depth + 1, k,
                        path + "/" + b.input + "=" + b.edges[e].output);
    if (defect) return defect;
  }
  return std::nullopt;
}

}  // namespace

StrategyTree extract_strategy(const Instance& s, std::uint64_t k, const SolveConfig& cfg) {
  SolveConfig search_cfg = cfg;
  search_cfg.mode = SearchMode::EarlyStop;
  search_cfg.memoize = true;
  detail::Search search(s, search_cfg);
  if (!search.decide(k))
    throw NoStrategy("no adaptive strategy of depth <= " + std::to_string(k) + " forces a verdict");
  return build(search, s.all_functions(), s.no_inputs(), search.clamp(k), 0);
}

std::optional<std::string> strategy_defect(const Instance& s, const StrategyTree& t, std::uint64_t k) {
  return check(s, t, s.all_functions(), s.no_inputs(), 0, k, "root");
}

bool validate_strategy(const Instance& s, const StrategyTree& t, std::uint64_t k) {
  return !strategy_defect(s, t, k).has_value();
}

}  // namespace atdp
