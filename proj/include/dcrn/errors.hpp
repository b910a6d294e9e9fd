#pragma once

#include <stdexcept>
#include <string>

namespace dcrn {

/// Malformed network text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Structural or equilibrium analysis could not produce a result.
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotWeaklyReversible : public AnalysisError {
 public:
  NotWeaklyReversible() : AnalysisError("network is not weakly reversible") {}
};

class NotComplexBalanced : public AnalysisError {
 public:
  explicit NotComplexBalanced(double residual)
      : AnalysisError("network admits no complex balanced equilibrium (log-linear residual " +
                      std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

class NewtonFailure : public AnalysisError {
 public:
  NewtonFailure(int iterations, double residual)
      : AnalysisError("in-class Newton solve did not converge after " + std::to_string(iterations) +
                      " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// The integrator produced a state it refuses to continue from.
class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(double time, const std::string& what)
      : std::runtime_error("integration failed at t = " + std::to_string(time) + ": " + what),
        time_(time) {}

  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace dcrn
