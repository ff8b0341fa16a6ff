#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uncon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a documented invariant (bad grid sizes, dt <= 0, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text. Line 0 denotes a command-line override.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string key)
      : Error((line == 0 ? std::string("override") : "line " + std::to_string(line)) +
              (key.empty() ? "" : " [" + key + "]") + ": " + what),
        line_(line),
        key_(std::move(key)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Base for failures of the numerics (CLI exit code 2).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public NumericalError {
 public:
  NonConvergence(int iterations, double residual)
      : NumericalError("iteration did not converge after " + std::to_string(iterations) +
                       " iterations (relative residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Neumann right-hand side with nonzero mean while strict compatibility is on.
class IncompatibleRhs : public NumericalError {
 public:
  explicit IncompatibleRhs(double defect)
      : NumericalError("Neumann right-hand side violates compatibility (relative defect " +
                       std::to_string(defect) + ")"),
        defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// Boundary flux and source data of the nonhomogeneous pressure problem do not balance.
class IncompatibleData : public NumericalError {
 public:
  explicit IncompatibleData(double defect)
      : NumericalError("boundary data incompatible with divergence data (relative defect " +
                       std::to_string(defect) + ")"),
        defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class Blowup : public NumericalError {
 public:
  Blowup(long step, double grad_norm)
      : NumericalError("blowup at step " + std::to_string(step) + " (|grad u| = " +
                       std::to_string(grad_norm) + ")"),
        step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

class GridTooLarge : public NumericalError {
 public:
  GridTooLarge(int nx, int ny, int cap)
      : NumericalError("dense assembly requested on " + std::to_string(nx) + "x" +
                       std::to_string(ny) + " grid; cap is " + std::to_string(cap) + "x" +
                       std::to_string(cap)) {}
};

class DegenerateSeries : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace uncon
