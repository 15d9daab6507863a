#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace csm {

using cplx = std::complex<double>;
using Polyline = std::vector<cplx>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Input geometry is inconsistent (open chains, coincident boundaries, ...).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural/configuration problems in a domain document or run setup.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The planner could not produce an admissible result (no slit-free theta0,
/// no fusion pair). Carries the best rejected candidate for diagnostics.
class PlanningError : public std::runtime_error {
 public:
  PlanningError(const std::string& what, double best_candidate, double best_clearance,
                int intersections)
      : std::runtime_error(what),
        best_candidate(best_candidate),
        best_clearance(best_clearance),
        intersections(intersections) {}
  explicit PlanningError(const std::string& what) : std::runtime_error(what) {}
  double best_candidate = 0.0;
  double best_clearance = 0.0;
  int intersections = -1;
};

/// Linear-solve residuals, bisection non-convergence, monotonicity violations.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Query point sits inside the region where quadrature accuracy is lost
/// (near a boundary contour or slit arc), as opposed to being outside the
/// domain entirely (std::domain_error).
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace csm
