#include "csm/spiral.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "csm/bspline.hpp"
#include "csm/geometry.hpp"

namespace csm {

ControlLadder build_ladder(std::span<const double> radii, double r_min, double theta0) {
  if (radii.empty()) throw std::invalid_argument("ladder needs at least one iso radius");
  if (theta0 <= -pi || theta0 > pi) throw std::invalid_argument("theta0 must lie in (-pi, pi]");
  double prev = 1.0;
  for (double r : radii) {
    if (r >= prev || r < r_min)
      throw std::invalid_argument("ladder radii must decrease strictly from 1 toward r_min");
    prev = r;
  }
  const int k = static_cast<int>(radii.size());
  ControlLadder sp;
  sp.theta0 = theta0;
  sp.points.reserve(k + 4);
  sp.points.emplace_back(theta0, 1.0);
  sp.points.emplace_back(theta0, 1.0);
  for (int j = 0; j < k; ++j) sp.points.emplace_back(theta0 + two_pi * (j + 1), radii[j]);
  const double theta_end = theta0 + two_pi * (k + 1);
  sp.points.emplace_back(theta_end, r_min);
  sp.points.emplace_back(theta_end, r_min);
  return sp;
}

Polyline interpolate_ladder(const ControlLadder& ladder, int samples_per_turn) {
  if (samples_per_turn < 32) throw std::invalid_argument("samples_per_turn must be >= 32");
  const int turns = static_cast<int>(ladder.points.size()) - 3;  // k+1
  const int count = turns * samples_per_turn + 1;
  Polyline out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = clamped_bspline_eval(ladder.points, static_cast<double>(i) / (count - 1));
  }
  return out;
}

namespace {

// Horizontal slit segments replicated in 2*pi cycles across the spiral span.
std::vector<std::pair<cplx, cplx>> replicate_slits(std::span<const SlitArcSpec> slits,
                                                   double xmin, double xmax) {
  std::vector<std::pair<cplx, cplx>> segs;
  for (const auto& s : slits) {
    const long l0 = static_cast<long>(std::floor((xmin - s.alpha - s.extent) / two_pi)) - 1;
    const long l1 = static_cast<long>(std::ceil((xmax - s.alpha) / two_pi)) + 1;
    for (long l = l0; l <= l1; ++l) {
      const double a = s.alpha + two_pi * l;
      const double b = a + s.extent;
      if (b < xmin || a > xmax) continue;
      segs.push_back({cplx(a, s.radius), cplx(b, s.radius)});
    }
  }
  return segs;
}

}  // namespace

int count_slit_intersections(std::span<const cplx> spiral_xy,
                             std::span<const SlitArcSpec> slits) {
  if (spiral_xy.size() < 2) return 0;
  const double xmin = spiral_xy.front().real();
  const double xmax = spiral_xy.back().real();
  const auto segs = replicate_slits(slits, std::min(xmin, xmax), std::max(xmin, xmax));
  int count = 0;
  for (size_t i = 0; i + 1 < spiral_xy.size(); ++i) {
    for (const auto& [a, b] : segs) {
      if (segments_intersect(spiral_xy[i], spiral_xy[i + 1], a, b)) ++count;
    }
  }
  return count;
}

double slit_clearance(std::span<const cplx> spiral_xy, std::span<const SlitArcSpec> slits) {
  if (spiral_xy.size() < 2 || slits.empty())
    return std::numeric_limits<double>::infinity();
  const double xmin = spiral_xy.front().real();
  const double xmax = spiral_xy.back().real();
  const auto segs = replicate_slits(slits, std::min(xmin, xmax), std::max(xmin, xmax));
  double d = std::numeric_limits<double>::infinity();
  for (const cplx& p : spiral_xy) {
    for (const auto& [a, b] : segs) d = std::min(d, dist_point_segment(p, a, b));
  }
  return d;
}

Theta0Choice avoid_slits(std::span<const double> radii, double r_min,
                         std::span<const SlitArcSpec> slits, int grid_steps,
                         int samples_per_turn) {
  Theta0Choice best_ok{0.0, -1.0, 0};
  Theta0Choice best_bad{0.0, -1.0, std::numeric_limits<int>::max()};
  bool any_ok = false;
  for (int i = 0; i < grid_steps; ++i) {
    const double theta0 = -pi + two_pi * (i + 1) / grid_steps;  // (-pi, pi]
    const auto curve = interpolate_ladder(build_ladder(radii, r_min, theta0),
                                          samples_per_turn);
    const int hits = count_slit_intersections(curve, slits);
    const double clr = slit_clearance(curve, slits);
    if (hits == 0) {
      if (!any_ok || clr > best_ok.clearance) best_ok = {theta0, clr, 0};
      any_ok = true;
    } else if (hits < best_bad.intersections ||
               (hits == best_bad.intersections && clr > best_bad.clearance)) {
      best_bad = {theta0, clr, hits};
    }
  }
  if (!any_ok)
    throw PlanningError("no admissible theta0 clears the slit images",
                        best_bad.theta0, best_bad.clearance, best_bad.intersections);
  return best_ok;
}

SpiralPath to_polar_and_pullback(const Polyline& sc, const MappingSolution& sol) {
  SpiralPath path;
  if (sc.empty()) return path;
  path.theta0 = sc.front().real();
  path.mapped = sc;
  const double r_min = sol.inner_radius();
  // The plain trapezoidal inverse is still accurate within a couple of grid
  // spacings; only the innermost band is projected onto the boundary itself.
  const double excl_out = 0.4 * sol.image_exclusion(0);
  const double excl_in = sol.kind == MapKind::Annular ? 0.4 * sol.image_exclusion(1) : 0.0;
  path.preimage.reserve(sc.size());
  path.preimage_theta.reserve(sc.size());
  for (const cplx& p : sc) {
    const double theta = p.real();
    const double rho = std::clamp(p.imag(), r_min, 1.0);
    cplx z;
    if (rho > 1.0 - excl_out) {
      z = sol.boundary_point_at_angle(0, theta);
    } else if (sol.kind == MapKind::Annular && rho < r_min + excl_in) {
      z = sol.boundary_point_at_angle(1, theta);
    } else {
      z = sol.raw_inverse(std::polar(rho, theta));
    }
    if (!path.preimage.empty() && std::abs(z - path.preimage.back()) < 1e-12) continue;
    path.preimage.push_back(z);
    path.preimage_theta.push_back(theta);
  }
  path.fused = path.preimage;
  return path;
}

// ---------------------------------------------------------------------------
// Boundary fusion
// ---------------------------------------------------------------------------

namespace {

cplx tangent_at(std::span<const cplx> pts, size_t i, bool closed) {
  const size_t n = pts.size();
  const cplx a = pts[i == 0 ? (closed ? n - 1 : 0) : i - 1];
  const cplx b = pts[i + 1 >= n ? (closed ? (i + 1) % n : n - 1) : i + 1];
  const cplx d = b - a;
  const double len = std::abs(d);
  return len > 0 ? d / len : cplx(1, 0);
}

std::vector<cplx> hermite_blend(cplx p0, cplx t0, cplx p1, cplx t1, int samples) {
  std::vector<cplx> out;
  const double len = std::abs(p1 - p0);
  const cplx m0 = t0 * len;
  const cplx m1 = t1 * len;
  for (int i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / (samples + 1);
    const double t2 = t * t, t3 = t2 * t;
    out.push_back((2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 +
                  (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * m1);
  }
  return out;
}

// Walks idx forward along a polyline until the accumulated arclength reaches
// span (closed loops wrap).
size_t walk_arclength(std::span<const cplx> pts, size_t idx, double span, bool closed) {
  const size_t n = pts.size();
  double acc = 0.0;
  size_t steps = 0;
  while (acc < span && steps + 2 < n) {
    const size_t next = closed ? (idx + 1) % n : idx + 1;
    if (!closed && next + 1 >= n) break;
    acc += std::abs(pts[next] - pts[idx]);
    idx = next;
    ++steps;
  }
  return idx;
}

struct FusePlan {
  size_t leave_idx;   // leave the path after this vertex
  size_t rejoin_idx;  // rejoin the path at this vertex
  size_t loop_exit;   // loop vertex where the traversal ends
  size_t loop_enter;  // loop vertex where the traversal starts
  Polyline loop;      // traversal-ordered copy
};

}  // namespace

void fuse_boundaries(SpiralPath& path, std::span<const Polyline> loops, double C,
                     const FuseConfig& cfg) {
  Polyline& base = path.fused;
  if (base.size() < 2) throw PlanningError("cannot fuse boundaries into an empty path");
  const double cos_gate = std::cos(cfg.angle_threshold_deg * pi / 180.0);

  std::vector<FusePlan> plans;
  std::vector<std::pair<size_t, size_t>> taken;  // occupied [leave, rejoin] spans
  for (size_t li = 0; li < loops.size(); ++li) {
    const Polyline loop = densify(loops[li], std::max(C / 8.0, 1e-9), true);
    double best_score = std::numeric_limits<double>::infinity();
    size_t best_a = 0, best_b = 0;
    bool best_rev = false, found = false;
    for (size_t a = 1; a + 2 < base.size(); ++a) {
      bool clash = false;
      for (const auto& t : taken)
        if (a + 10 > t.first && t.second + 10 > a) clash = true;  // keep splices apart
      if (clash) continue;
      const cplx tp = tangent_at(base, a, false);
      for (size_t b = 0; b < loop.size(); ++b) {
        const double d = std::abs(base[a] - loop[b]);
        if (d > 3.0 * C) continue;
        const cplx tl = tangent_at(loop, b, true);
        const double dot = tp.real() * tl.real() + tp.imag() * tl.imag();
        const bool rev = dot < 0;
        const double align = std::abs(dot);
        if (align < cos_gate) continue;
        const double angle_deg = std::acos(std::min(1.0, align)) * 180.0 / pi;
        const double score = d / C + angle_deg / cfg.angle_threshold_deg;
        if (score < best_score) {
          best_score = score;
          best_a = a;
          best_b = b;
          best_rev = rev;
          found = true;
        }
      }
    }
    if (!found)
      throw PlanningError("no fusion pair with aligned tangents found for boundary " +
                          std::to_string(li));
    FusePlan plan;
    plan.loop = loop;
    if (best_rev) {
      std::reverse(plan.loop.begin(), plan.loop.end());
      best_b = plan.loop.size() - 1 - best_b;
    }
    // The crossing is forced by swapping the forward offsets: the path leaves
    // toward a loop point ahead, the loop exits back to a path point ahead.
    const double gap = cfg.blend_length_factor * C;
    plan.leave_idx = best_a;
    plan.rejoin_idx = walk_arclength(base, best_a, gap, false);
    plan.loop_exit = best_b;
    plan.loop_enter = walk_arclength(plan.loop, best_b, gap, true);
    if (plan.rejoin_idx <= plan.leave_idx) plan.rejoin_idx = plan.leave_idx + 1;
    taken.push_back({plan.leave_idx, plan.rejoin_idx});
    plans.push_back(std::move(plan));
  }

  // Splice from the back so earlier indices stay valid.
  std::sort(plans.begin(), plans.end(),
            [](const FusePlan& x, const FusePlan& y) { return x.leave_idx > y.leave_idx; });
  for (const auto& plan : plans) {
    const size_t nb = plan.loop.size();
    const cplx tp_out = tangent_at(base, plan.leave_idx, false);
    const cplx tp_in = tangent_at(base, plan.rejoin_idx, false);
    Polyline insert;
    const cplx enter_pt = plan.loop[plan.loop_enter];
    const cplx tl_enter = tangent_at(plan.loop, plan.loop_enter, true);
    for (const cplx& q : hermite_blend(base[plan.leave_idx], tp_out, enter_pt, tl_enter, 8))
      insert.push_back(q);
    // Full traversal from loop_enter the long way round to loop_exit.
    for (size_t s = 0;; ++s) {
      const size_t idx = (plan.loop_enter + s) % nb;
      insert.push_back(plan.loop[idx]);
      if (idx == plan.loop_exit) break;
      if (s > nb + 1) break;
    }
    const cplx tl_exit = tangent_at(plan.loop, plan.loop_exit, true);
    for (const cplx& q :
         hermite_blend(plan.loop[plan.loop_exit], tl_exit, base[plan.rejoin_idx], tp_in, 8))
      insert.push_back(q);
    base.erase(base.begin() + plan.leave_idx + 1, base.begin() + plan.rejoin_idx);
    base.insert(base.begin() + plan.leave_idx + 1, insert.begin(), insert.end());
    ++path.fused_loops;
  }
}

// ---------------------------------------------------------------------------
// Endpoint trimming
// ---------------------------------------------------------------------------

namespace {

struct CoverageCounter {
  double res = 0, x0 = 0, y0 = 0;
  int nx = 0, ny = 0;
  std::vector<int> count;       // per-cell covering-segment count; -1 = outside
  double radius = 0;

  int cell_index(int ix, int iy) const { return iy * nx + ix; }

  std::vector<int> cells_near(cplx a, cplx b) const {
    std::vector<int> out;
    const double xmin = std::min(a.real(), b.real()) - radius;
    const double xmax = std::max(a.real(), b.real()) + radius;
    const double ymin = std::min(a.imag(), b.imag()) - radius;
    const double ymax = std::max(a.imag(), b.imag()) + radius;
    const int ix0 = std::max(0, static_cast<int>(std::floor((xmin - x0) / res)));
    const int ix1 = std::min(nx - 1, static_cast<int>(std::ceil((xmax - x0) / res)));
    const int iy0 = std::max(0, static_cast<int>(std::floor((ymin - y0) / res)));
    const int iy1 = std::min(ny - 1, static_cast<int>(std::ceil((ymax - y0) / res)));
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        const int ci = cell_index(ix, iy);
        if (count[ci] < 0) continue;
        const cplx c(x0 + (ix + 0.5) * res, y0 + (iy + 0.5) * res);
        if (dist_point_segment(c, a, b) <= radius) out.push_back(ci);
      }
    }
    return out;
  }
};

}  // namespace

void trim_ends(SpiralPath& path, std::span<const Polyline> domain, double C,
               double resolution) {
  Polyline& pts = path.fused;
  if (C <= 0 || resolution <= 0 || pts.size() < 3) return;

  CoverageCounter cov;
  cov.res = resolution;
  cov.radius = C;
  const BBox bb = bbox_of(domain);
  cov.x0 = bb.xmin - C;
  cov.y0 = bb.ymin - C;
  cov.nx = static_cast<int>(std::ceil((bb.width() + 2 * C) / resolution)) + 1;
  cov.ny = static_cast<int>(std::ceil((bb.height() + 2 * C) / resolution)) + 1;
  cov.count.assign(static_cast<size_t>(cov.nx) * cov.ny, 0);
  for (int iy = 0; iy < cov.ny; ++iy) {
    for (int ix = 0; ix < cov.nx; ++ix) {
      const cplx c(cov.x0 + (ix + 0.5) * resolution, cov.y0 + (iy + 0.5) * resolution);
      if (!inside_region(c, domain)) cov.count[cov.cell_index(ix, iy)] = -1;
    }
  }
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    for (int ci : cov.cells_near(pts[i], pts[i + 1])) ++cov.count[ci];
  }

  auto try_pop = [&](bool tail) -> bool {
    if (pts.size() < 3) return false;
    const cplx a = tail ? pts[pts.size() - 2] : pts[0];
    const cplx b = tail ? pts[pts.size() - 1] : pts[1];
    const auto cells = cov.cells_near(a, b);
    for (int ci : cells) {
      if (cov.count[ci] == 1) return false;  // this segment is the sole cover
    }
    for (int ci : cells) --cov.count[ci];
    if (tail)
      pts.pop_back();
    else
      pts.erase(pts.begin());
    return true;
  };

  while (try_pop(true)) ++path.trim_tail;
  while (try_pop(false)) ++path.trim_head;
  path.trim_head_point = pts.front();
  path.trim_tail_point = pts.back();
}

}  // namespace csm
