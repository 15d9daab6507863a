#pragma once

#include <array>
#include <span>

#include "csm/types.hpp"

namespace csm {

/// Uniform cubic B-spline basis F_{0..3,3}(u), u in [0,1]. Partition of unity.
std::array<double, 4> cubic_basis(double u);

/// First derivative of the basis; sums to zero for every u.
std::array<double, 4> cubic_basis_derivative(double u);

// Open uniform spline over k >= 4 control points, parameter t in [0, k-3].
cplx spline_eval_open(std::span<const cplx> ctrl, double t);
cplx spline_deriv_open(std::span<const cplx> ctrl, double t);

// Closed (periodic) spline over k >= 4 control points, parameter t in [0, k].
cplx spline_eval_closed(std::span<const cplx> ctrl, double t);
cplx spline_deriv_closed(std::span<const cplx> ctrl, double t);

/// Cubic B-spline with clamped end knots (multiplicity four), evaluated at
/// u in [0,1]; the curve meets the first and last control points exactly.
cplx clamped_bspline_eval(std::span<const cplx> ctrl, double u);

}  // namespace csm
