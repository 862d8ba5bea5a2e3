#pragma once

#include <stdexcept>
#include <string>

namespace coxlift {

/// Base class of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input data is malformed or mathematically inconsistent.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; the computation cannot be trusted.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateDegreeData : public InputError {
 public:
  DegenerateDegreeData() : InputError("degenerate degree data") {}
};

class FactorizationRequired : public InputError {
 public:
  explicit FactorizationRequired(const std::string& element)
      : InputError("factorization oracle required for " + element) {}
};

class RewriteDiverged : public Error {
 public:
  RewriteDiverged(const std::string& what, std::string trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::string& trace() const { return trace_; }

 private:
  std::string trace_;
};

class NonPrimeRoot : public InputError {
 public:
  explicit NonPrimeRoot(const std::string& section)
      : InputError("root along non-prime divisor breaks graded factoriality: " + section) {}
};

}  // namespace coxlift
