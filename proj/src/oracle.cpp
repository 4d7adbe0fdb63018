#include "atdp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace atdp {

QbfFormula normalize(QbfFormula q) {
  for (auto& c : q.clauses) {
    if (c.empty()) throw std::invalid_argument("empty clause");
    for (const auto& l : c)
      if (l.var < 1 || l.var > q.k)
        throw std::invalid_argument("variable index " + std::to_string(l.var) + " outside 1.." + std::to_string(q.k));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return q;
}

std::string to_string(const Literal& l) {
  return std::string(l.negated ? "-" : "") + (l.kind == Literal::Kind::X ? "x" : "y") + std::to_string(l.var);
}

std::vector<std::string> validate_cover(const SetCoverInstance& sc) {
  std::vector<std::string> out;
  std::set<std::string> elements, covered, names;
  for (const auto& e : sc.elements)
    if (!elements.insert(e).second) out.push_back("duplicate element '" + e + "'");
  for (const auto& s : sc.sets) {
    if (!names.insert(s.name).second) out.push_back("duplicate set name '" + s.name + "'");
    for (const auto& m : s.members) {
      if (!elements.count(m)) out.push_back("set '" + s.name + "' names undeclared element '" + m + "'");
      covered.insert(m);
    }
  }
  for (const auto& e : sc.elements)
    if (!covered.count(e)) out.push_back("element '" + e + "' is in no set");
  return out;
}

namespace {

constexpr unsigned kUnreachable = ~0u;

struct Table {
  std::vector<std::vector<std::uint32_t>> cell;  // [function][input] -> output mask
  std::uint64_t correct = 0;
  std::uint64_t everything = 0;
  std::size_t inputs = 0;
  std::size_t outputs = 0;
};

class DepthOracle {
 public:
  explicit DepthOracle(Table t) : t_(std::move(t)) {}

  unsigned md(std::uint64_t alive, std::uint32_t used) {
    if ((alive & ~t_.correct) == 0 || (alive & t_.correct) == 0) return 0;
    const auto key = std::make_pair(alive, used);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    unsigned best = kUnreachable;
    for (std::size_t i = 0; i < t_.inputs; ++i) {
      if (used & (1u << i)) continue;
      std::uint32_t seen = 0;
      for (std::uint64_t rest = alive; rest; rest &= rest - 1)
        seen |= t_.cell[static_cast<std::size_t>(std::countr_zero(rest))][i];
      unsigned worst = 0;
      for (std::size_t o = 0; o < t_.outputs && worst != kUnreachable; ++o) {
        if (!(seen & (1u << o))) continue;
        std::uint64_t child = 0;
        for (std::uint64_t rest = alive; rest; rest &= rest - 1) {
          const auto f = static_cast<std::size_t>(std::countr_zero(rest));
          if (t_.cell[f][i] & (1u << o)) child |= std::uint64_t{1} << f;
        }
        worst = std::max(worst, md(child, used | (1u << i)));
      }
      if (worst != kUnreachable) best = std::min(best, worst + 1);
    }
    memo_.emplace(key, best);
    return best;
  }

  const Table& table() const { return t_; }

 private:
  Table t_;
  std::map<std::pair<std::uint64_t, std::uint32_t>, unsigned> memo_;
};

bool clause_holds(const Clause& c, const std::vector<bool>& x, const std::vector<bool>& y) {
  for (const auto& l : c) {
    const bool v = (l.kind == Literal::Kind::X ? x : y)[l.var];
    if (v != l.negated) return true;
  }
  return false;
}

bool qbf_level(const QbfFormula& q, unsigned j, std::vector<bool>& x, std::vector<bool>& y) {
  if (j > q.k) {
    return std::all_of(q.clauses.begin(), q.clauses.end(),
                       [&](const Clause& c) { return clause_holds(c, x, y); });
  }
  for (bool xv : {false, true}) {
    x[j] = xv;
    bool all_y = true;
    for (bool yv : {false, true}) {
      y[j] = yv;
      if (!qbf_level(q, j + 1, x, y)) {
        all_y = false;
        break;
      }
    }
    if (all_y) return true;
  }
  return false;
}

}  // namespace

std::optional<unsigned> min_depth(const Scenario& s, OracleLimits limits) {
  if (auto vs = validate_scenario(s); !vs.empty()) throw InvalidScenario(std::move(vs));
  if (s.inputs.size() > limits.max_inputs || s.functions.size() > limits.max_functions ||
      s.functions.size() > 64 || s.inputs.size() > 31 || s.outputs.size() > 32)
    throw SizeGuardExceeded("min_depth limited to |I|<=" + std::to_string(limits.max_inputs) +
                            ", |C|<=" + std::to_string(limits.max_functions));

  std::map<std::string, std::size_t> out_ix;
  for (std::size_t o = 0; o < s.outputs.size(); ++o) out_ix[s.outputs[o]] = o;
  const std::set<std::string> correct(s.correct.begin(), s.correct.end());

  Table t;
  t.inputs = s.inputs.size();
  t.outputs = s.outputs.size();
  for (std::size_t f = 0; f < s.functions.size(); ++f) {
    std::vector<std::uint32_t> row;
    for (const auto& in : s.inputs) {
      std::uint32_t mask = 0;
      for (const auto& o : s.functions[f].table.at(in)) mask |= 1u << out_ix.at(o);
      row.push_back(mask);
    }
    t.cell.push_back(std::move(row));
    t.everything |= std::uint64_t{1} << f;
    if (correct.count(s.functions[f].name)) t.correct |= std::uint64_t{1} << f;
  }

  DepthOracle oracle(std::move(t));
  const unsigned d = oracle.md(oracle.table().everything, 0);
  if (d == kUnreachable) return std::nullopt;
  return d;
}

bool qbf_eval(const QbfFormula& q) {
  const QbfFormula n = normalize(q);
  std::vector<bool> x(n.k + 1, false), y(n.k + 1, false);
  return qbf_level(n, 1, x, y);
}

std::size_t min_set_cover(const SetCoverInstance& sc, std::size_t max_sets) {
  if (sc.sets.size() > max_sets || sc.sets.size() > 30)
    throw SizeGuardExceeded("oracle.min_set_cover limited to " + std::to_string(max_sets) + " sets");
  if (auto problems = validate_cover(sc); !problems.empty()) throw std::invalid_argument(problems.front());

  std::map<std::string, std::size_t> ix;
  for (std::size_t e = 0; e < sc.elements.size(); ++e) ix[sc.elements[e]] = e;
  std::vector<std::vector<bool>> member(sc.sets.size(), std::vector<bool>(sc.elements.size(), false));
  for (std::size_t s = 0; s < sc.sets.size(); ++s)
    for (const auto& m : sc.sets[s].members) member[s][ix.at(m)] = true;

  const std::size_t m = sc.sets.size();
  for (std::size_t size = 0; size <= m; ++size) {
    for (std::uint32_t pick = 0; pick < (1u << m); ++pick) {
      if (static_cast<std::size_t>(std::popcount(pick)) != size) continue;
      std::vector<bool> covered(sc.elements.size(), false);
      for (std::size_t s = 0; s < m; ++s)
        if (pick & (1u << s))
          for (std::size_t e = 0; e < sc.elements.size(); ++e) covered[e] = covered[e] || member[s][e];
      if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) return size;
    }
  }
  throw std::invalid_argument("instance has no cover");
}

}  // namespace atdp
