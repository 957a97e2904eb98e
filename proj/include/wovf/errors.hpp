#pragma once

#include <stdexcept>
#include <string>

namespace wovf {

// Base for every error raised by the library. Callers that only care about
// "something in the frame machinery refused the input" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InconsistentDecomposition : public Error {
 public:
  using Error::Error;
};

class NotDual : public Error {
 public:
  NotDual(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class NotSimilar : public Error {
 public:
  NotSimilar(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class InvalidSystem : public Error {
 public:
  using Error::Error;
};

// Hypothesis failures carry a short machine-readable reason tag
// (e.g. "NotParseval", "RangesDiffer") next to the human message.
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string reason, const std::string& what)
      : Error(reason + ": " + what), reason_(std::move(reason)) {}
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

class TheoremViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace wovf
