#pragma once

#include <span>

#include "csm/isoparam.hpp"
#include "csm/slitmap.hpp"
#include "csm/types.hpp"

namespace csm {

// The mapped-domain spiral lives in a plane whose X coordinate is the angle
// theta and whose Y coordinate is the radius rho; slit arcs replicate along X
// in 2*pi cycles. Points are stored as cplx with real()=theta, imag()=rho.

struct ControlLadder {
  double theta0 = 0.0;
  std::vector<cplx> points;  // (theta_j, R) pairs, k+4 entries with doubled ends
};

/// Eq.-style ladder: theta_j = theta0 + 2*pi*j, radii descending from 1 to
/// r_min, first and last points doubled.
ControlLadder build_ladder(std::span<const double> radii, double r_min, double theta0);

/// Clamped cubic B-spline through the ladder control points, sampled densely;
/// starts/ends exactly at the doubled endpoints and is monotone in theta.
Polyline interpolate_ladder(const ControlLadder& ladder, int samples_per_turn);

struct SlitArcSpec {
  double radius = 0.0;
  double alpha = 0.0;
  double extent = 0.0;
};

struct Theta0Choice {
  double theta0 = 0.0;
  double clearance = 0.0;
  int intersections = 0;
};

/// Scans theta0 over (-pi, pi] and returns the admissible start angle whose
/// spiral clears every replicated slit segment with the largest margin.
/// Throws PlanningError carrying the best candidate when nothing is
/// admissible.
Theta0Choice avoid_slits(std::span<const double> radii, double r_min,
                         std::span<const SlitArcSpec> slits, int grid_steps,
                         int samples_per_turn);

int count_slit_intersections(std::span<const cplx> spiral_xy,
                             std::span<const SlitArcSpec> slits);
double slit_clearance(std::span<const cplx> spiral_xy, std::span<const SlitArcSpec> slits);

struct SpiralPath {
  double theta0 = 0.0;
  Polyline mapped;                  // (theta, rho) samples of SC*
  Polyline preimage;                // omega^{-1}(SC*), caller frame
  std::vector<double> preimage_theta;  // spiral parameter per preimage vertex
  Polyline fused;                   // single connected coverage path
  int fused_loops = 0;
  size_t trim_head = 0, trim_tail = 0;  // removed vertex counts
  cplx trim_head_point = 0.0, trim_tail_point = 0.0;
};

/// Interprets the curve's X as angle and Y as radius, forms rho*e^{i theta}
/// and pulls back through the inverse map. Samples inside the image-side
/// exclusion bands are projected onto the corresponding boundary through the
/// angle table so the clamped endpoints stay meaningful.
SpiralPath to_polar_and_pullback(const Polyline& sc, const MappingSolution& sol);

struct FuseConfig {
  double angle_threshold_deg = 15.0;
  double blend_length_factor = 0.5;  // blend arc length cap, times C
};

/// Splices every boundary loop into the path through two short C1 blends
/// forming a single crossing per loop. Loops are given in traversal-agnostic
/// storage order; direction is chosen to match the local path tangent.
void fuse_boundaries(SpiralPath& path, std::span<const Polyline> loops, double C,
                     const FuseConfig& cfg = {});

/// Greedy endpoint trimming: vertices fall off each end while the swept disc
/// of radius C still covers whatever it covered before.
void trim_ends(SpiralPath& path, std::span<const Polyline> domain, double C,
               double resolution);

}  // namespace csm
