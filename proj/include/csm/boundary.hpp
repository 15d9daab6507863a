#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "csm/types.hpp"

namespace csm {

// ---------------------------------------------------------------------------
// Boundary segments. Lines and arcs are parameterized by exact arclength,
// splines by their native parameter; parameterize() rescales either onto the
// shared 2*pi-periodic grid.
// ---------------------------------------------------------------------------

struct LineSeg {
  cplx a, b;
};

struct ArcSeg {
  cplx center;
  double radius = 0;
  double start_angle = 0;
  double sweep = 0;  // signed; positive = counterclockwise
};

struct SplineSeg {
  std::vector<cplx> ctrl;  // k >= 4 control points
  bool closed = false;
};

using Segment = std::variant<LineSeg, ArcSeg, SplineSeg>;

/// Native parameter upper bound: arclength for lines/arcs, k-3 (open) or k
/// (closed) for splines.
double segment_param_upper(const Segment& s);
cplx segment_eval(const Segment& s, double u);
cplx segment_derivative(const Segment& s, double u);
cplx segment_head(const Segment& s);
cplx segment_tail(const Segment& s);
Segment segment_reversed(const Segment& s);

// Spec-level spline accessors (domain error outside the parameter interval).
cplx eval_spline(const SplineSeg& s, double t);
cplx eval_spline_derivative(const SplineSeg& s, double t);

struct BoundaryCurve {
  std::vector<Segment> segments;
  int corner_count = 0;  // p_j; 0 means a single closed spline
};

struct DomainSpec {
  std::vector<BoundaryCurve> boundaries;  // [0] outer, rest holes; m >= 1
  cplx origin = 0.0;                      // must lie inside the material
  std::optional<cplx> z1;                 // annular anchor, inside hole 1
  int grading_p = 3;
  int samples_per_boundary = 1024;
};

struct BoundarySamples {
  std::vector<cplx> eta;            // values at t_k = 2*pi*k/n
  std::vector<cplx> etap;           // first derivative at t_k
  std::vector<int> corner_nodes;    // grid indices that coincide with corners
};

struct DiscretizedBoundary {
  int n = 0;
  std::vector<BoundarySamples> boundaries;
  int count() const { return static_cast<int>(boundaries.size()); }
};

/// Kress grading map sigma: [0,2pi] -> [0,2pi], strictly increasing with
/// sigma'(0) = sigma'(2pi) = 0; p >= 2.
double grading_map(double t_hat, int p);
double grading_map_derivative(double t_hat, int p);

/// 2*pi-periodic parameterization of one closed boundary at n uniform nodes.
/// Smooth curves (corner_count 0) use the linear rescale; cornered curves
/// compose the per-segment affine map with the piecewise grading so that the
/// derivative vanishes exactly at corner parameters.
BoundarySamples parameterize(const BoundaryCurve& curve, int p, int n);

DiscretizedBoundary parameterize_domain(const DomainSpec& spec);

enum class CaseKind { CaseI, CaseII };

struct ClassifyResult {
  CaseKind kind = CaseKind::CaseI;
  cplx centroid = 0.0;   // area centroid O_G of the material
  int hole_index = -1;   // boundary index of the hole containing O_G (case II)
  cplx z1 = 0.0;         // supplied or auto-placed anchor (case II)
};

/// Decides disc vs annular mapping from the material centroid (case II when
/// O_G falls inside a hole) and resolves the Z1 anchor.
ClassifyResult classify_case(const DomainSpec& spec);

/// Reorders boundaries so the anchor hole becomes Gamma_1 and stores z1.
DomainSpec normalize_for_case(const DomainSpec& spec, const ClassifyResult& cls);

/// Dense polyline of one boundary (4x the sample count by default), used for
/// point-in-domain tests.
Polyline boundary_polyline(const BoundaryCurve& curve, int p, int n);

}  // namespace csm
