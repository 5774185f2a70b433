#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace refquest {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration text. The message carries line/key context.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A world (or other document) parsed fine but breaks a structural invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class IndistinguishablePair : public Error {
 public:
  IndistinguishablePair(std::string first, std::string second);
  const std::string& first() const noexcept { return first_; }
  const std::string& second() const noexcept { return second_; }

 private:
  std::string first_;
  std::string second_;
};

class UnknownReferent : public Error {
 public:
  using Error::Error;
};

class ContradictoryAnswer : public Error {
 public:
  using Error::Error;
};

class MissingFrequency : public Error {
 public:
  using Error::Error;
};

class NoInformativeQuestion : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InfeasibleSpec : public Error {
 public:
  using Error::Error;
};

class InsufficientSample : public Error {
 public:
  using Error::Error;
};

}  // namespace refquest
