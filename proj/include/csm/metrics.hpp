#pragma once

#include <cstdint>
#include <span>

#include "csm/types.hpp"

namespace csm {

double path_length(std::span<const cplx> path);

/// Fraction of the domain area within tool_radius of the path, measured on a
/// raster of the given resolution (cell counted when its center is covered).
/// resolution must be <= tool_radius / 10.
double coverage_fraction(std::span<const cplx> path, std::span<const Polyline> domain,
                         double tool_radius, double resolution);

struct TurningStats {
  double max_angle_deg = 0.0;
  int count_above = 0;
  double max_curvature = 0.0;   // angle / mean adjacent segment length
  double mean_curvature = 0.0;
};

TurningStats turning_stats(std::span<const cplx> path, double sharp_threshold_deg);

/// Ratio of the predicted operation count to measured wall time; natural logs.
double str_ratio(int m, int n, int nhat, int k, double eps, double elapsed_seconds);

struct SpacingStats {
  double max_gap = 0.0;
  double mean_gap = 0.0;
  int samples = 0;
  int skipped_across_holes = 0;
};

/// Distance from sampled spiral points to the nearest point on a different
/// turn (parameter separation > pi); pairs whose connector crosses a hole are
/// skipped. Sampling is seeded for determinism.
SpacingStats spiral_spacing(std::span<const cplx> pre, std::span<const double> theta,
                            std::span<const Polyline> holes, int nsamples, uint64_t seed);

}  // namespace csm
