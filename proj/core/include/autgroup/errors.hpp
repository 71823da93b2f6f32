#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace autgroup {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class MissingTransition : public Error {
 public:
  MissingTransition(const std::string& state, const std::string& letter)
      : Error("missing transition for state '" + state + "' on letter '" + letter + "'"),
        state(state),
        letter(letter) {}
  std::string state;
  std::string letter;
};

class NonInvertibleState : public Error {
 public:
  explicit NonInvertibleState(const std::string& state)
      : Error("state '" + state + "' does not permute the alphabet"), state(state) {}
  std::string state;
};

class DuplicateState : public Error {
 public:
  explicit DuplicateState(const std::string& name)
      : Error("duplicate declaration of '" + name + "'"), name(name) {}
  std::string name;
};

class UnknownLetter : public Error {
 public:
  explicit UnknownLetter(const std::string& name)
      : Error("unknown letter or state '" + name + "'"), name(name) {}
  std::string name;
};

class NoIdentityState : public Error {
 public:
  NoIdentityState() : Error("automaton has no trivial state") {}
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t budget)
      : Error(what + ": budget of " + std::to_string(budget) + " exceeded"), budget(budget) {}
  std::size_t budget;
};

class NotInBall : public Error {
 public:
  explicit NotInBall(std::size_t radius)
      : Error("element is not in the ball of radius " + std::to_string(radius)), radius(radius) {}
  std::size_t radius;
};

class NotFound : public Error {
 public:
  NotFound(std::size_t max_block, std::size_t max_power)
      : Error("no contraction certificate with L <= " + std::to_string(max_block) +
              " and k <= " + std::to_string(max_power)),
        max_block(max_block),
        max_power(max_power) {}
  std::size_t max_block;
  std::size_t max_power;
};

class CertificateMismatch : public Error {
 public:
  using Error::Error;
};

class NonTermination : public Error {
 public:
  explicit NonTermination(std::size_t stages)
      : Error("solver exceeded its stage limit of " + std::to_string(stages)), stages(stages) {}
  std::size_t stages;
};

class StageGuardExceeded : public Error {
 public:
  explicit StageGuardExceeded(std::size_t stages)
      : Error("polynomial solver exceeded " + std::to_string(stages) +
              " stages; automaton is probably misclassified"),
        stages(stages) {}
  std::size_t stages;
};

class ClosureFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace autgroup
