#pragma once

// Live adaptive testing sessions: a tester applies inputs to a real black box
// and reports what it answered; the session tracks which candidates survive.

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "atdp/advisor.hpp"
#include "atdp/model.hpp"

namespace atdp {

enum class SessionStatus { Running, VerdictCorrect, VerdictIncorrect, HypothesisViolated, Infeasible };

std::string_view to_string(SessionStatus s);

/// Observing or asking for advice on a session that has reached a verdict or
/// a hypothesis violation.
class SessionTerminated : public Error {
 public:
  using Error::Error;
};

struct SessionState {
  std::string id;
  std::shared_ptr<const Instance> instance;
  History history;
  IndexSet consistent;
  SessionStatus status = SessionStatus::Running;
  /// The observation that no candidate could produce, once status is
  /// HypothesisViolated.
  std::optional<Step> violation;
  std::chrono::system_clock::time_point created;
  std::chrono::system_clock::time_point updated;

  /// Running or Infeasible: more observations are accepted. Infeasible only
  /// says no strategy over the remaining inputs guarantees a verdict.
  bool live() const { return status == SessionStatus::Running || status == SessionStatus::Infeasible; }

  IndexSet used_inputs() const;

  /// Timestamps are metadata and do not take part.
  friend bool operator==(const SessionState& a, const SessionState& b);
};

/// Instances larger than this are never solved exactly on behalf of a session.
struct ExactGuard {
  std::size_t max_inputs = 10;
  std::size_t max_functions = 512;

  bool admits(const Instance& s) const {
    return s.num_inputs() <= max_inputs && s.num_functions() <= max_functions;
  }
};

SessionState create_session(std::shared_ptr<const Instance> instance, std::string id = {},
                            ExactGuard guard = {});

/// Throws SessionTerminated when the session is not live and UnknownSymbol
/// for labels outside the alphabets. Repeated and off-recommendation inputs
/// are accepted.
SessionState observe(const SessionState& st, std::string_view input, std::string_view output,
                     ExactGuard guard = {});

/// Rebuilds a session by replaying `history` from scratch. Stops at the first
/// terminal state; later steps are ignored.
SessionState replay(std::shared_ptr<const Instance> instance, const History& history, std::string id,
                    ExactGuard guard = {});

/// The surviving candidates over the inputs not yet applied.
Scenario residual_scenario(const SessionState& st);

/// Minimum worst-case number of further tests, nullopt when no strategy over
/// the remaining distinct inputs forces a verdict.
std::optional<std::uint64_t> feasibility(const SessionState& st);

struct ExactAdvice {};
struct HeuristicAdvice {
  unsigned depth = 2;
  std::uint64_t budget = 100000;
};
using AdviceMode = std::variant<ExactAdvice, HeuristicAdvice>;

/// Exact mode scores each unused input by the worst residual optimum over
/// its producible outputs. Above the guard it falls back to the heuristic
/// with Advice::fallback set.
Advice recommend(const SessionState& st, const AdviceMode& mode, ExactGuard guard = {});

}  // namespace atdp
