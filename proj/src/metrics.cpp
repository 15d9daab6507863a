#include "csm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "csm/geometry.hpp"

namespace csm {

double path_length(std::span<const cplx> path) {
  if (path.size() < 2) throw std::invalid_argument("path needs at least 2 vertices");
  return polyline_length(path, false);
}

double coverage_fraction(std::span<const cplx> path, std::span<const Polyline> domain,
                         double tool_radius, double resolution) {
  if (resolution > tool_radius / 10.0 + 1e-15)
    throw std::invalid_argument("raster resolution must be <= tool_radius / 10");
  if (resolution <= 0) throw std::invalid_argument("raster resolution must be positive");
  const BBox bb = bbox_of(domain);
  const int nx = static_cast<int>(std::ceil(bb.width() / resolution)) + 1;
  const int ny = static_cast<int>(std::ceil(bb.height() / resolution)) + 1;
  SegmentGrid grid(path, tool_radius > 0 ? tool_radius : resolution);
  long total = 0, covered = 0;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const cplx c(bb.xmin + (ix + 0.5) * resolution, bb.ymin + (iy + 0.5) * resolution);
      if (!inside_region(c, domain)) continue;
      ++total;
      if (path.size() >= 2 && grid.within(c, tool_radius)) ++covered;
    }
  }
  if (total == 0) return 0.0;
  return static_cast<double>(covered) / total;
}

TurningStats turning_stats(std::span<const cplx> path, double sharp_threshold_deg) {
  if (path.size() < 3) throw std::invalid_argument("turning stats need at least 3 vertices");
  TurningStats st;
  double curv_sum = 0.0;
  int verts = 0;
  for (size_t i = 1; i + 1 < path.size(); ++i) {
    const cplx d0 = path[i] - path[i - 1];
    const cplx d1 = path[i + 1] - path[i];
    const double l0 = std::abs(d0), l1 = std::abs(d1);
    if (l0 < 1e-15 || l1 < 1e-15) continue;
    double cosang = (d0.real() * d1.real() + d0.imag() * d1.imag()) / (l0 * l1);
    cosang = std::clamp(cosang, -1.0, 1.0);
    const double ang = std::acos(cosang) * 180.0 / pi;  // exterior angle
    st.max_angle_deg = std::max(st.max_angle_deg, ang);
    if (ang > sharp_threshold_deg) ++st.count_above;
    const double curv = (ang * pi / 180.0) / (0.5 * (l0 + l1));
    st.max_curvature = std::max(st.max_curvature, curv);
    curv_sum += curv;
    ++verts;
  }
  if (verts > 0) st.mean_curvature = curv_sum / verts;
  return st;
}

double str_ratio(int m, int n, int nhat, int k, double eps, double elapsed_seconds) {
  if (m <= 0 || n <= 0 || nhat <= 0 || k <= 0)
    throw std::invalid_argument("STR counts must be positive");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("STR eps must be in (0,1)");
  if (elapsed_seconds <= 0) throw std::invalid_argument("STR elapsed time must be positive");
  const double pts = static_cast<double>(m + 1) * n + nhat;
  return k * std::log(1.0 / eps) * pts * std::log(pts) / elapsed_seconds;
}

SpacingStats spiral_spacing(std::span<const cplx> pre, std::span<const double> theta,
                            std::span<const Polyline> holes, int nsamples, uint64_t seed) {
  SpacingStats st;
  if (pre.size() < 3 || pre.size() != theta.size()) return st;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, pre.size() - 1);
  double sum = 0.0;
  for (int s = 0; s < nsamples; ++s) {
    const size_t i = pick(rng);
    double best = std::numeric_limits<double>::infinity();
    size_t best_j = i;
    for (size_t j = 0; j + 1 < pre.size(); ++j) {
      if (std::abs(theta[j] - theta[i]) <= pi) continue;  // same turn
      const double d = dist_point_segment(pre[i], pre[j], pre[j + 1]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (!std::isfinite(best)) continue;
    // Distance is measured through free space: pairs separated by a hole are
    // excluded from the bound.
    bool across_hole = false;
    const cplx target = pre[best_j];
    for (const auto& hole : holes) {
      if (count_crossings(std::vector<cplx>{pre[i], target}, hole) > 0) {
        across_hole = true;
        break;
      }
    }
    if (across_hole) {
      ++st.skipped_across_holes;
      continue;
    }
    st.max_gap = std::max(st.max_gap, best);
    sum += best;
    ++st.samples;
  }
  if (st.samples > 0) st.mean_gap = sum / st.samples;
  return st;
}

}  // namespace csm
