#pragma once

#include <stdexcept>
#include <string>

namespace atdp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A document or text file could not be parsed; `field` names the offending
/// location (e.g. "functions[2].table.near").
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& detail)
      : Error(field + ": " + detail), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Symbol not declared in the scenario alphabets.
class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

/// The observations are consistent with no candidate: the IUT lies outside C.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// A brute-force or materializing routine was asked to exceed its size guard.
class SizeGuardExceeded : public Error {
 public:
  using Error::Error;
};

/// extract_strategy called on an instance with no winning strategy.
class NoStrategy : public Error {
 public:
  using Error::Error;
};

/// A search with a node budget ran out before finishing.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace atdp
