#pragma once

// Shared fixture domains and independent oracles for the test suites.

#include <cmath>
#include <random>

#include "csm/boundary.hpp"
#include "csm/geometry.hpp"
#include "csm/isoparam.hpp"
#include "csm/slitmap.hpp"

namespace fx {

using namespace csm;

// --- analytic circle discretizations (bypass the spline fit) ---------------

inline BoundarySamples circle_samples(cplx center, double radius, int n, bool ccw) {
  BoundarySamples b;
  b.eta.resize(n);
  b.etap.resize(n);
  const double s = ccw ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) {
    const double t = two_pi * k / n;
    b.eta[k] = center + radius * std::polar(1.0, s * t);
    b.etap[k] = cplx(0, 1) * s * radius * std::polar(1.0, s * t);
  }
  return b;
}

inline DiscretizedBoundary make_db(std::vector<BoundarySamples> bs, int n) {
  DiscretizedBoundary db;
  db.n = n;
  db.boundaries = std::move(bs);
  return db;
}

/// Unit circle with an eccentric hole |z - d| = r; exact circles.
inline DiscretizedBoundary eccentric_annulus_db(int n, double d = 0.3, double r = 0.25) {
  return make_db({circle_samples(0.0, 1.0, n, true), circle_samples(d, r, n, false)}, n);
}

/// Common inverse points of |z|=1 and |z-d|=r ; the Moebius transform
/// T(z) = (z - z*)/(z - z**) sends both circles to concentric ones, and the
/// radius ratio is the annulus modulus.
struct MobiusOracle {
  double modulus;  // expected R1
  double zstar;    // inverse point inside the hole (use as Z1)
};
inline MobiusOracle mobius_annulus(double d, double r) {
  const double s = (1.0 + d * d - r * r) / d;
  const double disc = std::sqrt(s * s - 4.0);
  const double zs = (s - disc) / 2.0;
  const double zss = (s + disc) / 2.0;
  auto T = [&](double z) { return std::abs((z - zs) / (z - zss)); };
  return {T(d + r) / T(1.0), zs};
}

// --- spline fixtures --------------------------------------------------------

/// Closed cubic spline whose control polygon sits on a (wobbled) circle. The
/// control radius is compensated so an unwobbled curve tracks the circle.
inline BoundaryCurve spline_circle(cplx center, double radius, int k, bool ccw,
                                   double wobble_amp = 0.0, int wobble_freq = 0) {
  SplineSeg seg;
  seg.closed = true;
  const double corr = 3.0 / (2.0 + std::cos(two_pi / k));
  for (int j = 0; j < k; ++j) {
    // One-control offset so the curve parameter t = 0 lands near angle 0.
    const double phi = (ccw ? 1.0 : -1.0) * two_pi * (j - 1) / k;
    const double rr = (radius + wobble_amp * std::sin(wobble_freq * phi)) * corr;
    seg.ctrl.push_back(center + rr * std::polar(1.0, phi));
  }
  BoundaryCurve b;
  b.segments.push_back(seg);
  b.corner_count = 0;
  return b;
}

/// Exact circle out of two arc segments (p_j = 2 artificial corners).
inline BoundaryCurve arc_circle(cplx center, double radius, bool ccw) {
  const double s = ccw ? 1.0 : -1.0;
  BoundaryCurve b;
  b.segments.push_back(ArcSeg{center, radius, 0.0, s * pi});
  b.segments.push_back(ArcSeg{center, radius, s * pi, s * pi});
  b.corner_count = 2;
  return b;
}

inline BoundaryCurve square_curve(double half, bool ccw) {
  std::vector<cplx> v = {{half, half}, {-half, half}, {-half, -half}, {half, -half}};
  if (!ccw) std::reverse(v.begin(), v.end());
  BoundaryCurve b;
  for (int i = 0; i < 4; ++i) b.segments.push_back(LineSeg{v[i], v[(i + 1) % 4]});
  b.corner_count = 4;
  return b;
}

/// Smooth three-boundary domain (m = 2): wobbled outer blob, two round holes.
inline DomainSpec two_hole_domain(int n = 1024) {
  DomainSpec spec;
  spec.boundaries.push_back(spline_circle(0.0, 1.6, 48, true, 0.08, 5));
  spec.boundaries.push_back(spline_circle({0.7, 0.15}, 0.3, 24, false));
  spec.boundaries.push_back(spline_circle({-0.65, -0.2}, 0.25, 24, false));
  spec.origin = 0.0;
  spec.samples_per_boundary = n;
  return spec;
}

/// Seven-hole domain in the style of a ruffled plate with a ring of holes.
inline DomainSpec seven_hole_domain(int n = 1024) {
  DomainSpec spec;
  spec.boundaries.push_back(spline_circle(0.0, 2.6, 64, true, 0.12, 7));
  for (int i = 0; i < 7; ++i) {
    const double phi = two_pi * i / 7;
    const double rr = 0.22 + 0.04 * (i % 3);
    spec.boundaries.push_back(spline_circle(1.45 * std::polar(1.0, phi), rr, 20, false));
  }
  spec.origin = 0.0;
  spec.samples_per_boundary = n;
  return spec;
}

/// Square plate with one round hole (cornered outer boundary).
inline DomainSpec square_hole_domain(int n = 1024) {
  DomainSpec spec;
  spec.boundaries.push_back(square_curve(1.0, true));
  spec.boundaries.push_back(arc_circle({0.45, 0.3}, 0.25, false));
  spec.origin = cplx{-0.3, -0.3};
  spec.samples_per_boundary = n;
  return spec;
}

/// Annulus-like domain whose centroid falls inside the central hole (case II).
inline DomainSpec annular_domain(int n = 1024) {
  DomainSpec spec;
  spec.boundaries.push_back(spline_circle(0.0, 1.5, 40, true, 0.05, 4));
  spec.boundaries.push_back(spline_circle({0.05, 0.0}, 0.45, 24, false));
  spec.boundaries.push_back(spline_circle({-0.95, 0.0}, 0.18, 16, false));
  spec.origin = cplx{0.95, 0.0};
  spec.samples_per_boundary = n;
  return spec;
}

// --- independent oracles ----------------------------------------------------

/// Brute-force inscribed circle: distance-to-boundary maximization on a grid.
inline InscribedCircle grid_mic(std::span<const Polyline> region, int grid) {
  BBox bb = bbox_of(region);
  InscribedCircle best;
  for (int iy = 0; iy <= grid; ++iy) {
    for (int ix = 0; ix <= grid; ++ix) {
      const cplx p(bb.xmin + bb.width() * ix / grid, bb.ymin + bb.height() * iy / grid);
      if (!inside_region(p, region)) continue;
      double d = std::numeric_limits<double>::infinity();
      for (const auto& poly : region) d = std::min(d, dist_to_polyline(p, poly, true));
      if (d > best.radius) {
        best.radius = d;
        best.center = p;
      }
    }
  }
  return best;
}

/// Random interior probe points that respect both the preimage-side and the
/// image-side exclusion zones (forward then inverse must both be admissible).
inline std::vector<cplx> interior_probes(const MappingSolution& sol, int count,
                                         uint64_t seed) {
  std::vector<Polyline> polys;
  for (int j = 0; j < sol.nb; ++j) polys.push_back(sol.boundary_curve(j));
  BBox bb = bbox_of(polys);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(bb.xmin, bb.xmax), uy(bb.ymin, bb.ymax);
  std::vector<cplx> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count && ++attempts < 100000) {
    const cplx z(ux(rng), uy(rng));
    if (!sol.inside_domain(z)) continue;
    if (sol.boundary_clearance(z) < 0.02) continue;
    try {
      const cplx w = sol.forward(z);
      (void)sol.inverse(w);
    } catch (const AccuracyError&) {
      continue;  // image point fell inside an image-side exclusion band
    }
    out.push_back(z);
  }
  return out;
}

}  // namespace fx
