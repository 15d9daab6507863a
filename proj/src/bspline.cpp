#include "csm/bspline.hpp"

#include <algorithm>
#include <cmath>

namespace csm {

std::array<double, 4> cubic_basis(double u) {
  const double s = 1.0 - u;
  return {s * s * s / 6.0,
          (3.0 * u * u * u - 6.0 * u * u + 4.0) / 6.0,
          (-3.0 * u * u * u + 3.0 * u * u + 3.0 * u + 1.0) / 6.0,
          u * u * u / 6.0};
}

std::array<double, 4> cubic_basis_derivative(double u) {
  const double s = 1.0 - u;
  return {-0.5 * s * s,
          1.5 * u * u - 2.0 * u,
          -1.5 * u * u + u + 0.5,
          0.5 * u * u};
}

namespace {

// Locates the span for an open spline: j in [0, k-4], local u in [0,1].
std::pair<int, double> open_span(std::span<const cplx> ctrl, double t) {
  const int k = static_cast<int>(ctrl.size());
  if (k < 4) throw std::domain_error("spline needs at least 4 control points");
  const double upper = static_cast<double>(k - 3);
  if (t < -1e-12 || t > upper + 1e-12)
    throw std::domain_error("spline parameter outside [0, k-3]");
  t = std::clamp(t, 0.0, upper);
  int j = std::min(static_cast<int>(std::floor(t)), k - 4);
  return {j, t - j};
}

std::pair<int, double> closed_span(std::span<const cplx> ctrl, double t) {
  const int k = static_cast<int>(ctrl.size());
  if (k < 4) throw std::domain_error("spline needs at least 4 control points");
  const double upper = static_cast<double>(k);
  if (t < -1e-12 || t > upper + 1e-12)
    throw std::domain_error("spline parameter outside [0, k]");
  t = std::clamp(t, 0.0, upper);
  const int jf = static_cast<int>(std::floor(t));
  const double u = t - jf;
  return {jf % k, u};
}

}  // namespace

cplx spline_eval_open(std::span<const cplx> ctrl, double t) {
  auto [j, u] = open_span(ctrl, t);
  const auto F = cubic_basis(u);
  cplx r = 0.0;
  for (int i = 0; i < 4; ++i) r += ctrl[j + i] * F[i];
  return r;
}

cplx spline_deriv_open(std::span<const cplx> ctrl, double t) {
  auto [j, u] = open_span(ctrl, t);
  const auto F = cubic_basis_derivative(u);
  cplx r = 0.0;
  for (int i = 0; i < 4; ++i) r += ctrl[j + i] * F[i];
  return r;
}

cplx spline_eval_closed(std::span<const cplx> ctrl, double t) {
  auto [j, u] = closed_span(ctrl, t);
  const int k = static_cast<int>(ctrl.size());
  const auto F = cubic_basis(u);
  cplx r = 0.0;
  for (int i = 0; i < 4; ++i) r += ctrl[(j + i) % k] * F[i];
  return r;
}

cplx spline_deriv_closed(std::span<const cplx> ctrl, double t) {
  auto [j, u] = closed_span(ctrl, t);
  const int k = static_cast<int>(ctrl.size());
  const auto F = cubic_basis_derivative(u);
  cplx r = 0.0;
  for (int i = 0; i < 4; ++i) r += ctrl[(j + i) % k] * F[i];
  return r;
}

cplx clamped_bspline_eval(std::span<const cplx> ctrl, double u) {
  const int nc = static_cast<int>(ctrl.size());
  if (nc < 4) throw std::domain_error("clamped spline needs at least 4 control points");
  const int degree = 3;
  const int nspans = nc - degree;  // interior knots 1..nspans-1
  u = std::clamp(u, 0.0, 1.0);
  // Knot vector: [0 x4, 1, 2, ..., nspans-1, nspans x4] / nspans.
  auto knot = [&](int i) -> double {
    const int v = std::clamp(i - degree, 0, nspans);
    return static_cast<double>(v) / nspans;
  };
  const double t = u;
  int span = degree + std::min(static_cast<int>(std::floor(t * nspans)), nspans - 1);
  // De Boor's algorithm.
  cplx d[4];
  for (int i = 0; i < 4; ++i) d[i] = ctrl[span - degree + i];
  for (int r = 1; r <= degree; ++r) {
    for (int i = degree; i >= r; --i) {
      const int gi = span - degree + i;
      const double den = knot(gi + degree + 1 - r) - knot(gi);
      const double alpha = den > 0 ? (t - knot(gi)) / den : 0.0;
      d[i] = (1.0 - alpha) * d[i - 1] + alpha * d[i];
    }
  }
  return d[degree];
}

}  // namespace csm
