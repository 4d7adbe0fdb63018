#include <omp.h>

#include <exception>
#include <stdexcept>

#include "atdp/solver.hpp"
#include "search.hpp"

namespace atdp {

namespace {

// Exceptions must not cross an OpenMP region boundary; keep the first one.
class FirstError {
 public:
  void capture() {
#pragma omp critical(atdp_first_error)
    if (!error_) error_ = std::current_exception();
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

bool decide_parallel(const Instance& s, std::uint64_t k, const SolveConfig& cfg) {
  detail::Search probe(s, cfg);
  const unsigned depth = probe.clamp(k);
  const IndexSet all = s.all_functions();
  if (depth == 0) return s.verdict_forced(all);
  if (probe.early_stop() && s.verdict_forced(all)) return true;

  // Each root alternative is an independent subtree; the root is an OR.
  const std::vector<std::size_t> roots = probe.candidates(s.no_inputs(), 0);
  const long n = static_cast<long>(roots.size());
  int found = 0;
  FirstError error;

#pragma omp parallel for schedule(dynamic, 1)
  for (long r = 0; r < n; ++r) {
    int done;
#pragma omp atomic read
    done = found;
    if (done) continue;
    try {
      detail::Search local(s, cfg);
      if (local.input_wins(all, s.no_inputs(), roots[static_cast<std::size_t>(r)], depth, 0)) {
#pragma omp atomic write
        found = 1;
      }
    } catch (...) {
      error.capture();
    }
  }
  if (found) return true;
  error.rethrow();
  return false;
}

std::vector<std::uint8_t> decide_batch(const std::vector<Instance>& instances,
                                       const std::vector<std::uint64_t>& ks, const SolveConfig& cfg) {
  if (ks.size() != instances.size()) throw std::invalid_argument("decide_batch: one k per instance required");
  std::vector<std::uint8_t> out(instances.size(), 0);
  const long n = static_cast<long>(instances.size());
  FirstError error;
#pragma omp parallel for schedule(dynamic, 4)
  for (long j = 0; j < n; ++j) {
    const auto u = static_cast<std::size_t>(j);
    try {
      out[u] = decide(instances[u], ks[u], cfg) ? 1 : 0;
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return out;
}

std::vector<std::optional<std::uint64_t>> optimize_batch(const std::vector<Instance>& instances,
                                                         const SolveConfig& cfg) {
  std::vector<std::optional<std::uint64_t>> out(instances.size());
  const long n = static_cast<long>(instances.size());
  FirstError error;
#pragma omp parallel for schedule(dynamic, 4)
  for (long j = 0; j < n; ++j) {
    const auto u = static_cast<std::size_t>(j);
    try {
      out[u] = optimize(instances[u], cfg);
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return out;
}

}  // namespace atdp
