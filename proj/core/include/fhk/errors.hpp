#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fhk {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments: out-of-range indices, bad sizes, mismatched q.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the geometric domain of an operation (|z| > 1, w off the sphere).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A subsphere or orthonormalization that has collapsed.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// An input that violates a documented precondition (e.g. a non-harmonic Y).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations that must agree did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Non-finite integrand value; carries the offending node index.
class EvaluationError : public Error {
 public:
  EvaluationError(std::size_t node, const std::string& what)
      : Error(what + " (node " + std::to_string(node) + ")"), node_(node) {}

  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

}  // namespace fhk
