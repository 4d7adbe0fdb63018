#include "atdp/advisor.hpp"

#include <algorithm>
#include <stdexcept>

namespace atdp {

double heuristic_value(const Instance& s, const IndexSet& cs) {
  const std::size_t total = cs.count();
  if (total == 0) throw std::invalid_argument("heuristic_value of an empty candidate set");
  const std::size_t good = (cs & s.correct_set()).count();
  return static_cast<double>(std::min(good, total - good)) / static_cast<double>(total);
}

double heuristic_value(const Instance& s, const std::vector<std::string>& cs) {
  return heuristic_value(s, s.function_set(cs));
}

namespace {

struct Value {
  double score;
  bool exact;  // every leaf under the chosen lines is a forced verdict
};

class Minimax {
 public:
  Minimax(const Instance& s, std::uint64_t budget) : s_(s), budget_(budget) {}

  Value position(const IndexSet& cs, const IndexSet& used, unsigned depth) {
    const double h = heuristic_value(s_, cs);
    if (h == 0.0) return {0.0, true};
    if (depth == 0 || used.count() == s_.num_inputs()) return {h, false};
    if (nodes_ >= budget_) {
      exhausted_ = true;
      return {h, false};
    }
    ++nodes_;
    Value best{kInfeasibleScore, false};
    for (std::size_t i = 0; i < s_.num_inputs(); ++i) {
      if (used.test(i)) continue;
      const Value v = move(cs, used, i, depth);
      if (v.score < best.score || (v.score == best.score && v.exact && !best.exact)) best = v;
    }
    return best;
  }

  Value move(const IndexSet& cs, const IndexSet& used, std::size_t input, unsigned depth) {
    IndexSet next_used = used;
    next_used.set(input);
    Value worst{0.0, true};
    for (std::size_t o : s_.outputs_of(cs, input)) {
      const Value child = position(cs & s_.producers(input, o), next_used, depth - 1);
      worst.score = std::max(worst.score, child.score);
      worst.exact = worst.exact && child.exact;
    }
    return worst;
  }

  void count_root() { ++nodes_; }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  const Instance& s_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Advice advise(const Instance& s, const IndexSet& cs, const IndexSet& used, unsigned depth, std::uint64_t budget) {
  if (cs.none()) throw std::invalid_argument("advise needs a non-empty candidate set");
  if (depth == 0) throw std::invalid_argument("advise needs depth >= 1");
  const std::size_t unused = s.num_inputs() - used.count();
  if (unused == 0) throw std::invalid_argument("no unused inputs remain");

  Minimax search(s, budget);
  search.count_root();
  Advice advice;
  for (std::size_t i = 0; i < s.num_inputs(); ++i) {
    if (used.test(i)) continue;
    const Value v = search.move(cs, used, i, depth);
    advice.ranked.push_back({s.input_name(i), v.score, v.exact});
  }
  // Candidates were generated in input order, so a stable sort keeps ties there.
  std::stable_sort(advice.ranked.begin(), advice.ranked.end(),
                   [](const RankedInput& a, const RankedInput& b) { return a.score < b.score; });
  advice.depth_used = std::min<std::size_t>(depth, unused);
  advice.nodes_expanded = search.nodes();
  advice.budget_exhausted = search.exhausted();
  return advice;
}

}  // namespace atdp
