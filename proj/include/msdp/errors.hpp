#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msdp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Assignment has the wrong length or holds a symbol outside the alphabet.
class InvalidAssignmentError : public Error {
 public:
  using Error::Error;
};

class StageOverflowError : public Error {
 public:
  using Error::Error;
};

// Malformed problem instance (bad sizes, empty alphabet, empty stage...).
class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

// Instance file could not be parsed; `field` names the offending JSON path.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// No feasible assignment survived. `stage` is 1-based. `proven` is false when
// survivors were evicted by a cap, so feasibility was not ruled out.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::size_t stage, bool proven)
      : Error("infeasible: last survivor died at stage " +
              std::to_string(stage) +
              (proven ? "" : " (not proven: survivors were cap-evicted)")),
        stage_(stage),
        proven_(proven) {}
  std::size_t stage() const { return stage_; }
  bool proven() const { return proven_; }

 private:
  std::size_t stage_;
  bool proven_;
};

// Completion search ran out of node expansions before deciding.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// Enumeration or alphabet size exceeds a configured cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace msdp
