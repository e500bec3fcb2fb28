#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rmc {

/// Bad input: malformed files, unknown labels, inadmissible paths,
/// violated preconditions. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value outside the numerical domain of a formula (boundary of the
/// simplex, non-positive definite cycle matrix, zero marginal). Exit code 3.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class GraphError : public InputError {
 public:
  enum class Kind { kEmpty, kUnknownLabel, kDuplicateLabel, kDuplicateEdge, kDisconnected };

  GraphError(Kind kind, const std::string& what) : InputError(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Raised when a path uses a step that is not an edge of the graph.
class PathError : public InputError {
 public:
  PathError(std::size_t step, const std::string& what) : InputError(what), step_(step) {}
  /// 1-based index i of the offending step (pi_{i-1}, pi_i).
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// An enumeration would exceed its configured cap.
class CapExceeded : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace rmc
