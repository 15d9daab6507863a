#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>

#include "csm/boundary.hpp"
#include "csm/types.hpp"

namespace csm {

enum class MapKind { Disc, Annular };

// ---------------------------------------------------------------------------
// Discretized boundary-integral operators. N holds the generalized Neumann
// kernel, M the singular companion kernel with Wittich's parity-split
// discretization of the cotangent part on same-boundary blocks. Diagonals are
// row-sum compensated so the discrete operators reproduce N*1 = -1 and
// M*1 = 0 exactly; on smooth curves these entries agree with the continuous
// s = t limits.
// ---------------------------------------------------------------------------
struct KernelPair {
  Eigen::MatrixXd N;
  Eigen::MatrixXd M;
  int n = 0;            // samples per boundary
  int nb = 0;           // boundary count m+1
};

/// db must already be expressed in origin-shifted coordinates.
KernelPair assemble_kernels(const DiscretizedBoundary& db);

/// Right-hand side gamma of the Riemann-Hilbert problem, origin-shifted frame.
Eigen::VectorXd rhs_gamma(const DiscretizedBoundary& db, MapKind kind,
                          std::optional<cplx> z1 = std::nullopt);

struct DensitySolution {
  Eigen::VectorXd mu;        // boundary density
  Eigen::VectorXd h;         // per-sample h before averaging
  std::vector<double> C;     // per-boundary constants (averaged h)
  std::vector<double> h_dev; // per-boundary stddev of h, conditioning diagnostic
  double residual = 0.0;
};

/// Solves (I - (2pi/n) N) mu = -(2pi/n) M gamma, then h = [M mu - (I-N) gamma]/2
/// with the same discrete operators. Throws NumericalError when the relative
/// residual exceeds 1e-8.
DensitySolution solve_density(const KernelPair& kp, const Eigen::VectorXd& gamma);

struct SlitArc {
  int boundary = 0;      // index j of the source boundary
  double radius = 0;     // R_j
  double alpha = 0;      // start angle of the circular interval hull
  double extent = 0;     // angular extent, 2*pi for a full circle
};

struct MappingSolution {
  MapKind kind = MapKind::Disc;
  cplx origin = 0.0;               // shift applied to the input geometry
  std::optional<cplx> z1;          // caller frame
  int n = 0;
  int nb = 0;

  // Origin-shifted boundary data retained for Cauchy evaluation.
  std::vector<std::vector<cplx>> eta, etap;
  std::vector<std::vector<cplx>> boundary_images;   // omega(eta_j)
  std::vector<std::vector<cplx>> image_derivative;  // d/dt omega(eta_j(t))

  Eigen::VectorXd mu;
  std::vector<cplx> f;             // boundary values of the intermediate function
  std::vector<double> C;           // piecewise constants per boundary
  std::vector<double> h_dev;
  double c = 1.0;                  // normalization constant, positive real
  std::vector<double> radii;       // R_0..R_m
  std::vector<double> circ_spread; // max-min of |omega| per boundary
  std::vector<double> circ_std;    // stddev of |omega| per boundary
  std::vector<SlitArc> slits;      // inner arcs (annular: boundaries >= 2)
  bool circularity_warning = false;

  // --- evaluation ---------------------------------------------------------
  /// omega(z) for z strictly inside G (caller frame), Eq.-style quotient
  /// Cauchy formula on the graded grid.
  cplx forward(cplx z) const;
  /// omega^{-1}(w) for w strictly inside the mapped disc/annulus and away
  /// from the slit arcs.
  cplx inverse(cplx w) const;
  /// Preimage polyline of the circle |w| = r sampled at count angles.
  /// Samples falling inside a slit's exclusion band are nudged radially off
  /// the slit (same ray) when nudge_near_slit is set, so the curve stays
  /// complete; otherwise they throw.
  Polyline inverse_circle(double r, int count, bool nudge_near_slit) const;
  /// Preimage boundary polyline in the caller frame.
  Polyline boundary_curve(int j) const;
  /// Point on boundary j whose image argument equals theta (angle table).
  cplx boundary_point_at_angle(int j, double theta) const;

  bool inside_domain(cplx z) const;              // caller frame
  double boundary_clearance(cplx z) const;       // distance minus exclusion
  double image_exclusion(int j) const;           // image-side exclusion radius
  double slit_distance(cplx w) const;            // distance to nearest slit arc
  double inner_radius() const { return kind == MapKind::Annular ? radii[1] : 0.0; }
  /// Unchecked quadrature of the inverse formula (callers guard the domain).
  cplx raw_inverse(cplx w) const;

  // SoA caches for the SIMD kernels (shifted frame).
  std::vector<double> eta_re, eta_im, fwd_num_re, fwd_num_im, fwd_den_re, fwd_den_im;
  std::vector<double> img_re, img_im, inv_w_re, inv_w_im;
  std::vector<std::vector<double>> angle_table;  // unwrapped image angles, [0] and annular [1]
  std::vector<std::vector<cplx>> table_pts_;     // boundary points matching angle_table
};

struct SlitmapConfig {
  double circularity_tol = 1e-4;   // spread threshold; >10x escalates to error
  double residual_tol = 1e-8;
};

/// Full boundary solve: kernels, density, boundary images, radii, slit arcs.
/// `db` is in the caller frame; `origin` is subtracted internally.
MappingSolution solve_slitmap(const DiscretizedBoundary& db, MapKind kind, cplx origin,
                              std::optional<cplx> z1 = std::nullopt,
                              const SlitmapConfig& cfg = {});

/// boundary_map per spec: assembles a MappingSolution from a precomputed
/// density (kernel/gamma/density stages already run, shifted frame).
MappingSolution boundary_map(const DiscretizedBoundary& db_shifted, MapKind kind,
                             cplx origin, std::optional<cplx> z1,
                             const Eigen::VectorXd& gamma, const DensitySolution& ds,
                             const SlitmapConfig& cfg = {});

}  // namespace csm
