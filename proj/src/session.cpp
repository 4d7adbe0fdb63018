#include "atdp/session.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "atdp/solver.hpp"

namespace atdp {

std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::Running: return "Running";
    case SessionStatus::VerdictCorrect: return "VerdictCorrect";
    case SessionStatus::VerdictIncorrect: return "VerdictIncorrect";
    case SessionStatus::HypothesisViolated: return "HypothesisViolated";
    case SessionStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

IndexSet SessionState::used_inputs() const {
  IndexSet used = instance->no_inputs();
  for (const auto& step : history) used.set(instance->input_index(step.input));
  return used;
}

bool operator==(const SessionState& a, const SessionState& b) {
  const bool same_scenario = a.instance == b.instance ||
                             (a.instance && b.instance && a.instance->scenario() == b.instance->scenario());
  return a.id == b.id && same_scenario && a.history == b.history && a.consistent == b.consistent &&
         a.status == b.status && a.violation == b.violation;
}

namespace {

std::string fresh_id() {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

void refresh_status(SessionState& st, const ExactGuard& guard) {
  const Instance& s = *st.instance;
  if (st.consistent.none()) {
    st.status = SessionStatus::HypothesisViolated;
    return;
  }
  switch (s.verdict(st.consistent)) {
    case Verdict::Correct: st.status = SessionStatus::VerdictCorrect; return;
    case Verdict::Incorrect: st.status = SessionStatus::VerdictIncorrect; return;
    case Verdict::Undecided: break;
  }
  st.status = SessionStatus::Running;
  if (guard.admits(s) && !feasibility(st)) st.status = SessionStatus::Infeasible;
}

void require_live(const SessionState& st) {
  if (!st.live())
    throw SessionTerminated("session " + st.id + " has finished with status " + std::string(to_string(st.status)));
}

}  // namespace

SessionState create_session(std::shared_ptr<const Instance> instance, std::string id, ExactGuard guard) {
  if (!instance) throw std::invalid_argument("create_session needs a scenario");
  SessionState st;
  st.id = id.empty() ? fresh_id() : std::move(id);
  st.consistent = instance->all_functions();
  st.instance = std::move(instance);
  st.created = st.updated = std::chrono::system_clock::now();
  refresh_status(st, guard);
  return st;
}

SessionState observe(const SessionState& st, std::string_view input, std::string_view output, ExactGuard guard) {
  require_live(st);
  const Instance& s = *st.instance;
  const std::size_t i = s.input_index(input);
  const std::size_t o = s.output_index(output);

  SessionState next = st;
  next.history.push_back({std::string(input), std::string(output)});
  next.consistent &= s.producers(i, o);
  next.updated = std::chrono::system_clock::now();
  if (next.consistent.none()) next.violation = next.history.back();
  refresh_status(next, guard);
  return next;
}

SessionState replay(std::shared_ptr<const Instance> instance, const History& history, std::string id,
                    ExactGuard guard) {
  SessionState st = create_session(std::move(instance), std::move(id), guard);
  for (const auto& step : history) {
    if (!st.live()) break;
    st = observe(st, step.input, step.output, guard);
  }
  return st;
}

Scenario residual_scenario(const SessionState& st) {
  return st.instance->restrict(st.consistent, st.used_inputs());
}

std::optional<std::uint64_t> feasibility(const SessionState& st) {
  require_live(st);
  return optimize(Instance(residual_scenario(st)));
}

Advice recommend(const SessionState& st, const AdviceMode& mode, ExactGuard guard) {
  require_live(st);
  const Instance& s = *st.instance;
  const IndexSet used = st.used_inputs();
  if (used.count() == s.num_inputs()) throw std::invalid_argument("every input has already been applied");

  if (const auto* h = std::get_if<HeuristicAdvice>(&mode)) return advise(s, st.consistent, used, h->depth, h->budget);

  if (!guard.admits(s)) {
    Advice a = advise(s, st.consistent, used, HeuristicAdvice{}.depth, HeuristicAdvice{}.budget);
    a.fallback = true;
    return a;
  }

  Advice advice;
  advice.depth_used = s.num_inputs() - used.count();
  for (std::size_t i = 0; i < s.num_inputs(); ++i) {
    if (used.test(i)) continue;
    IndexSet next_used = used;
    next_used.set(i);
    double worst = 0.0;
    for (std::size_t o : s.outputs_of(st.consistent, i)) {
      const auto residual = optimize(Instance(s.restrict(st.consistent & s.producers(i, o), next_used)));
      ++advice.nodes_expanded;
      worst = std::max(worst, residual ? static_cast<double>(*residual) : kInfeasibleScore);
    }
    advice.ranked.push_back({s.input_name(i), worst, true});
  }
  std::stable_sort(advice.ranked.begin(), advice.ranked.end(),
                   [](const RankedInput& a, const RankedInput& b) { return a.score < b.score; });
  return advice;
}

}  // namespace atdp
