#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace levykac {

// Invalid model/potential/grid parameters (alpha out of range, R too small, ...).
struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation outside the admissible domain (x = 0 for a jump intensity,
// window reaching into the wrap-around zone, ...).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// e^{-t psi} fails the integrability pretest at the requested t.
struct integrability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested operation needs an exact-constant density the family lacks.
struct unsupported_family_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative eigensolver ran out of its iteration budget.
struct convergence_error : std::runtime_error {
  std::vector<double> best_residuals;
  convergence_error(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), best_residuals(std::move(residuals)) {}
};

// Function handed to subaveraging_envelope failed the subaveraging pretest.
struct not_subaveraging_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Monte Carlo denominator consistent with zero.
struct insufficient_statistics_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Radial sample set violates a precondition (nu >= 1 on a sample, ...).
struct sampling_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace levykac
