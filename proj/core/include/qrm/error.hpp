#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace qrm {

// Precondition violations surface as std::invalid_argument. Everything below
// is a failure of the numerics on otherwise valid input.

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truncation cap reached (or eigensolver iteration cap hit) before the
// requested levels settled. residual is the last max level drift observed.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Wraps a failure that happened while evaluating one point of a sweep/scan.
class GridPointError : public NumericalError {
 public:
  GridPointError(const std::string& where, const std::string& cause)
      : NumericalError(where + ": " + cause), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// refine_crossing found no interior minimum of the gap inside the bracket.
class MonotoneGapError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Zero/nonzero overlap classification lacks the required scale separation.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qrm
