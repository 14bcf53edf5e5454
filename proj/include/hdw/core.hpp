#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hdw {

using Index = Eigen::Index;
using cplx = std::complex<double>;

/// Invalid argument or out-of-range parameter.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-point solver did not reach tolerance; carries the last residual.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Data cannot support the requested estimate (e.g. zero-variance coordinate).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Statistic undefined for the input (e.g. all-zero sample).
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contour quadrature met a singular kernel or an unacceptable residue.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hdw
