#pragma once

#include <functional>
#include <map>
#include <span>

#include "csm/slitmap.hpp"
#include "csm/types.hpp"

namespace csm {

struct InscribedCircle {
  cplx center = 0.0;
  double radius = 0.0;
};

/// Maximum inscribed circle of a multiply connected region given as closed
/// polylines (first = outer, rest = holes): Delaunay circumcenters filtered
/// to the region, maximal circumradius wins. Returns radius 0 when the region
/// is empty after hole subtraction.
InscribedCircle max_inscribed_circle(std::span<const Polyline> region);

struct HoleInfo {
  double radius = 0.0;  // mapped radius R_i
  Polyline curve;       // preimage boundary polyline
  double band = 0.0;    // image-side relocation band around the slit radius
};

/// Everything the spacing controller needs from the mapping; level_curve is
/// injected so the controller can be exercised with stub maps.
struct IsoContext {
  std::function<Polyline(double)> level_curve;  // preimage of the circle |w|=R
  double r_down = 0.0;                          // 0 (case I) or R1 (case II)
  std::vector<HoleInfo> holes;                  // inner boundaries with slit radii
  double densify_spacing = 0.0;                 // vertex-spacing cap for MIC input

  const Polyline& cached_curve(double r);
  std::map<double, Polyline> cache;
};

/// Region between the level curves at r_a and r_b plus any hole whose mapped
/// radius lies strictly between; r_a == r_b is the terminal query (lower
/// curve replaced by r_down, omitted entirely when that is 0).
std::vector<Polyline> gap_region(IsoContext& ctx, double r_a, double r_b);

struct IsoParamFamily {
  double C = 0.0;
  double eps = 0.0;
  double r_down = 0.0;
  std::vector<double> radii;     // R_C1 > R_C2 > ... > R_Ck
  std::vector<Polyline> curves;  // L_C1..L_Ck
  std::vector<double> gap_mic;   // certified MIC of gap i (target C/2 then C)
  double residual_mic = 0.0;     // terminal MIC below the next target
  int k() const { return static_cast<int>(radii.size()); }
};

/// Bisection spacing control: first gap C/2, interior gaps C, stop when the
/// residual region's MIC drops below the next target.
IsoParamFamily spacing_control(IsoContext& ctx, double C, double eps);

/// Pipeline wiring for the real inverse map; nhat points per level curve.
IsoContext make_iso_context(const MappingSolution& sol, int nhat, double C);

/// spacing_control over a solved mapping (spec-level signature).
IsoParamFamily spacing_control(const MappingSolution& sol, int nhat, double C, double eps);

}  // namespace csm
