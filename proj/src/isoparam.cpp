#include "csm/isoparam.hpp"

#include <algorithm>
#include <cmath>

#include "csm/geometry.hpp"

namespace csm {

const Polyline& IsoContext::cached_curve(double r) {
  auto it = cache.find(r);
  if (it != cache.end()) return it->second;
  if (cache.size() > 16) cache.clear();
  return cache.emplace(r, level_curve(r)).first->second;
}

std::vector<Polyline> gap_region(IsoContext& ctx, double r_a, double r_b) {
  if (r_a < r_b) throw std::invalid_argument("gap_region requires r_a >= r_b");
  if (r_a == r_b) r_b = ctx.r_down;  // terminal query

  std::vector<Polyline> region;
  auto add = [&](const Polyline& poly) {
    if (ctx.densify_spacing > 0)
      region.push_back(densify(poly, ctx.densify_spacing, true));
    else
      region.push_back(poly);
  };
  add(ctx.cached_curve(r_a));
  if (!(r_b == 0.0 && ctx.r_down == 0.0))
    add(ctx.cached_curve(r_b));
  for (const auto& hole : ctx.holes) {
    if (r_a > hole.radius && hole.radius > r_b) add(hole.curve);
  }
  return region;
}

IsoParamFamily spacing_control(IsoContext& ctx, double C, double eps) {
  if (C <= 0) throw std::invalid_argument("spacing constant C must be positive");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("tolerance eps must be in (0,1)");

  IsoParamFamily fam;
  fam.C = C;
  fam.eps = eps;
  fam.r_down = ctx.r_down;

  auto mic_between = [&](double ra, double rb) {
    auto region = gap_region(ctx, ra, rb);
    return max_inscribed_circle(region).radius;
  };

  double r_up = 1.0;
  int k = 0;
  while (true) {
    const double target = k == 0 ? C / 2.0 : C;
    const double residual = mic_between(r_up, r_up);
    if (residual < target) {
      fam.residual_mic = residual;
      break;
    }
    double lo = ctx.r_down;
    double hi = r_up;
    double r = 0.0, g = 0.0;
    bool converged = false;
    std::vector<std::pair<double, double>> probes;  // (radius, mic)
    auto hole_between = [&](double a, double b) {
      if (a > b) std::swap(a, b);
      for (const auto& hole : ctx.holes)
        if (hole.radius > a && hole.radius < b) return true;
      return false;
    };
    for (int iter = 0; iter < 64; ++iter) {
      r = 0.5 * (lo + hi);
      g = mic_between(r_up, r);
      // The gap MIC must shrink as the lower radius rises, except where a
      // hole radius enters or leaves the gap (the region gains or loses an
      // obstacle there). Violations beyond the certification slack mean the
      // MIC measurements themselves are junk.
      for (const auto& [pr, pg] : probes) {
        if (hole_between(pr, r)) continue;
        const double slack = eps * target;
        if ((r > pr && g > pg + slack) || (r < pr && g < pg - slack))
          throw NumericalError(
              "gap MIC is not monotone in the lower radius: MIC(" + std::to_string(pr) +
              ")=" + std::to_string(pg) + " vs MIC(" + std::to_string(r) + ")=" +
              std::to_string(g));
      }
      probes.emplace_back(r, g);
      // The pseudocode stops on the MIC tolerance alone; the extra bracket
      // shrink pins the radius itself to within eps*C as well.
      if (std::abs(g - target) < eps * target && (hi - lo) <= eps * C) {
        converged = true;
        break;
      }
      if (g > target)
        lo = r;
      else
        hi = r;
    }
    if (!converged) {
      // Near a slit radius the level curve is pinned off the slit, so the gap
      // MIC has a genuine step and no radius meets the tolerance. Fall back
      // to the conservative side of the step (gap below target keeps the
      // spacing coverage-safe); anywhere else a stall means the measurements
      // are untrustworthy.
      bool near_slit = false;
      for (const auto& hole : ctx.holes) {
        if (hole.radius + hole.band >= lo && hole.radius - hole.band <= hi)
          near_slit = true;
      }
      if (near_slit) {
        double best_r = 0.0, best_g = -1.0;
        for (const auto& [pr, pg] : probes) {
          if (pg <= target * (1.0 + eps) && pg > best_g && pr >= lo && pr <= hi + eps * C) {
            best_r = pr;
            best_g = pg;
          }
        }
        if (best_g > 0.0) {
          r = best_r;
          g = best_g;
          converged = true;
        }
      }
    }
    if (!converged)
      throw NumericalError("spacing bisection did not converge for gap " +
                           std::to_string(k + 1));
    fam.radii.push_back(r);
    fam.gap_mic.push_back(g);
    fam.curves.push_back(ctx.cached_curve(r));
    r_up = r;
    ++k;
  }
  return fam;
}

IsoContext make_iso_context(const MappingSolution& sol, int nhat, double C) {
  IsoContext ctx;
  ctx.r_down = sol.inner_radius();
  ctx.densify_spacing = C > 0 ? C / 10.0 : 0.0;
  const double r1 = ctx.r_down;
  ctx.level_curve = [&sol, nhat, r1](double r) -> Polyline {
    if (std::abs(r - 1.0) < 1e-12) return sol.boundary_curve(0);
    if (sol.kind == MapKind::Annular && std::abs(r - r1) < 1e-12)
      return sol.boundary_curve(1);
    return sol.inverse_circle(r, nhat, /*nudge_near_slit=*/true);
  };
  const int first_slit = sol.kind == MapKind::Disc ? 1 : 2;
  for (int j = first_slit; j < sol.nb; ++j) {
    ctx.holes.push_back({sol.radii[j], sol.boundary_curve(j), 0.4 * sol.image_exclusion(j)});
  }
  return ctx;
}

IsoParamFamily spacing_control(const MappingSolution& sol, int nhat, double C, double eps) {
  IsoContext ctx = make_iso_context(sol, nhat, C);
  return spacing_control(ctx, C, eps);
}

}  // namespace csm
