#include "csm/slitmap.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "csm/geometry.hpp"
#include "csm/kernels.hpp"

namespace csm {

namespace {

// Periodic spectral derivative d/dt of n uniformly sampled complex values.
std::vector<cplx> spectral_derivative(const std::vector<cplx>& vals) {
  const int n = static_cast<int>(vals.size());
  std::vector<cplx> out(n);
  fftw_complex* buf = fftw_alloc_complex(n);
  for (int i = 0; i < n; ++i) {
    buf[i][0] = vals[i].real();
    buf[i][1] = vals[i].imag();
  }
  fftw_plan fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);
  for (int k = 0; k < n; ++k) {
    double freq = k <= n / 2 ? k : k - n;
    if (2 * k == n) freq = 0.0;  // Nyquist mode carries no derivative
    const double re = buf[k][0], im = buf[k][1];
    buf[k][0] = -freq * im;
    buf[k][1] = freq * re;
  }
  fftw_plan bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);
  for (int i = 0; i < n; ++i) out[i] = cplx(buf[i][0] / n, buf[i][1] / n);
  fftw_free(buf);
  return out;
}

std::vector<double> unwrap_args(const std::vector<cplx>& vals) {
  std::vector<double> phi(vals.size());
  phi[0] = std::arg(vals[0]);
  for (size_t k = 1; k < vals.size(); ++k)
    phi[k] = phi[k - 1] + std::arg(vals[k] / vals[k - 1]);
  return phi;
}

double domain_scale(const DiscretizedBoundary& db) {
  BBox bb = bbox_of(db.boundaries[0].eta);
  return std::max(bb.diameter(), 1e-12);
}

}  // namespace

// ---------------------------------------------------------------------------
// Kernel assembly
// ---------------------------------------------------------------------------

KernelPair assemble_kernels(const DiscretizedBoundary& db) {
  const int n = db.n;
  const int nb = db.count();
  const int N = nb * n;
  KernelPair kp;
  kp.n = n;
  kp.nb = nb;
  kp.N.resize(N, N);
  kp.M.resize(N, N);

  std::vector<cplx> eta(N), etap(N);
  for (int j = 0; j < nb; ++j) {
    std::copy(db.boundaries[j].eta.begin(), db.boundaries[j].eta.end(), eta.begin() + j * n);
    std::copy(db.boundaries[j].etap.begin(), db.boundaries[j].etap.end(), etap.begin() + j * n);
  }

  const double coincident_tol = 1e-12 * domain_scale(db);

  // cot(pi d / n) table for the Wittich parity correction, d = ki - kj.
  std::vector<double> cot_table(n, 0.0);
  for (int d = 1; d < n; ++d) cot_table[d] = 1.0 / std::tan(pi * d / n);
  auto cot_half = [&](int d) { return d >= 0 ? cot_table[d] : -cot_table[-d]; };

  for (int col = 0; col < N; ++col) {
    const int bj = col / n;
    const int kj = col % n;
    const cplx et = eta[col];
    const cplx ept = etap[col];
    const cplx qt = ept / et;  // eta'_t / eta_t
    double* Ncol = kp.N.col(col).data();
    double* Mcol = kp.M.col(col).data();
    for (int row = 0; row < N; ++row) {
      if (row == col) {
        Ncol[row] = 0.0;
        Mcol[row] = 0.0;
        continue;
      }
      const cplx es = eta[row];
      const cplx d = et - es;
      const double d2 = std::norm(d);
      const int bi = row / n;
      if (d2 < coincident_tol * coincident_tol) {
        if (bi != bj)
          throw GeometryError("boundaries " + std::to_string(bi) + " and " +
                              std::to_string(bj) + " have coincident sample points");
        // same-boundary duplicate node: degenerate parameterization
        throw GeometryError("coincident samples on boundary " + std::to_string(bi));
      }
      // core = eta_s * eta'_t / (eta_t * (eta_t - eta_s)) = (eta_s/d) * qt
      const double inv = 1.0 / d2;
      const double sr = (es.real() * d.real() + es.imag() * d.imag()) * inv;
      const double si = (es.imag() * d.real() - es.real() * d.imag()) * inv;
      const double cr = sr * qt.real() - si * qt.imag();
      const double ci = sr * qt.imag() + si * qt.real();
      Ncol[row] = ci / pi;
      double m = cr / pi;
      if (bi == bj) {
        const int ki = row % n;
        const int dd = ki - kj;
        const double cot = cot_half(dd);
        m += ((dd & 1) == 0 ? cot : -cot) / two_pi;
      }
      Mcol[row] = m;
    }
  }

  // Row-sum compensated diagonals: the continuous operators satisfy
  // N*1 = -1 and M*1 = 0, so the diagonal absorbs the quadrature remainder.
  Eigen::VectorXd nsum = kp.N.rowwise().sum();
  Eigen::VectorXd msum = kp.M.rowwise().sum();
  const double wq = two_pi / n;
  for (int i = 0; i < N; ++i) {
    kp.N(i, i) = -1.0 / wq - nsum(i);
    kp.M(i, i) = -msum(i);
  }
  return kp;
}

// ---------------------------------------------------------------------------
// Right-hand side
// ---------------------------------------------------------------------------

Eigen::VectorXd rhs_gamma(const DiscretizedBoundary& db, MapKind kind,
                          std::optional<cplx> z1) {
  const int n = db.n;
  const int nb = db.count();
  Eigen::VectorXd g(nb * n);
  const double tiny = 1e-14 * domain_scale(db);
  if (kind == MapKind::Annular) {
    if (!z1) throw ValidationError("annular mapping requires Z1");
    if (std::abs(*z1) < tiny) throw ValidationError("Z1 must differ from the origin");
  }
  for (int j = 0; j < nb; ++j) {
    for (int k = 0; k < n; ++k) {
      const cplx e = db.boundaries[j].eta[k];
      if (kind == MapKind::Disc) {
        const double a = std::abs(e);
        if (a < tiny)
          throw GeometryError("boundary " + std::to_string(j) + " passes through the origin");
        g(j * n + k) = -std::log(a);
      } else {
        const double a = std::abs(1.0 - e / *z1);
        if (a < tiny)
          throw GeometryError("boundary " + std::to_string(j) + " passes through Z1");
        g(j * n + k) = -std::log(a);
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Density solve
// ---------------------------------------------------------------------------

DensitySolution solve_density(const KernelPair& kp, const Eigen::VectorXd& gamma) {
  const int N = static_cast<int>(gamma.size());
  if (kp.N.rows() != N) throw std::invalid_argument("kernel size does not match gamma");
  const double w = two_pi / kp.n;

  Eigen::VectorXd rhs = -w * (kp.M * gamma);
  Eigen::MatrixXd A = -w * kp.N;
  A.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXd>> lu(A);  // in-place
  DensitySolution ds;
  ds.mu = lu.solve(rhs);

  const double rhs_norm = std::max(rhs.norm(), 1e-300);
  ds.residual = (ds.mu - w * (kp.N * ds.mu) - rhs).norm() / rhs_norm;
  if (ds.residual > 1e-8)
    throw NumericalError("density solve residual " + std::to_string(ds.residual) +
                         " exceeds tolerance");

  ds.h = (w * (kp.M * ds.mu) - gamma + w * (kp.N * gamma)) / 2.0;
  ds.C.resize(kp.nb);
  ds.h_dev.resize(kp.nb);
  for (int j = 0; j < kp.nb; ++j) {
    const auto seg = ds.h.segment(j * kp.n, kp.n);
    ds.C[j] = seg.mean();
    ds.h_dev[j] = std::sqrt((seg.array() - ds.C[j]).square().mean());
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Boundary map assembly
// ---------------------------------------------------------------------------

MappingSolution boundary_map(const DiscretizedBoundary& db_shifted, MapKind kind,
                             cplx origin, std::optional<cplx> z1,
                             const Eigen::VectorXd& gamma, const DensitySolution& ds,
                             const SlitmapConfig& cfg) {
  MappingSolution sol;
  sol.kind = kind;
  sol.origin = origin;
  sol.z1 = z1;
  sol.n = db_shifted.n;
  sol.nb = db_shifted.count();
  const int n = sol.n;
  const int nb = sol.nb;

  sol.mu = ds.mu;
  sol.C = ds.C;
  sol.h_dev = ds.h_dev;
  sol.c = std::exp(-ds.C[0]);

  const cplx z1s = z1 ? *z1 - origin : cplx{};

  sol.eta.resize(nb);
  sol.etap.resize(nb);
  sol.boundary_images.resize(nb);
  sol.image_derivative.resize(nb);
  sol.f.resize(nb * n);
  sol.radii.resize(nb);
  sol.circ_spread.resize(nb);
  sol.circ_std.resize(nb);

  for (int j = 0; j < nb; ++j) {
    sol.eta[j] = db_shifted.boundaries[j].eta;
    sol.etap[j] = db_shifted.boundaries[j].etap;
    auto& B = sol.boundary_images[j];
    B.resize(n);
    double amax = 0.0, amin = 0.0, asum = 0.0, asq = 0.0;
    for (int k = 0; k < n; ++k) {
      const int p = j * n + k;
      const cplx e = sol.eta[j][k];
      const cplx g = cplx(gamma(p) + ds.h(p), ds.mu(p));  // eta * f on the boundary
      sol.f[p] = g / e;
      const cplx lead = kind == MapKind::Disc ? e : (1.0 - e / z1s);
      B[k] = sol.c * lead * std::exp(g);
      const double a = std::abs(B[k]);
      if (k == 0) amax = amin = a;
      amax = std::max(amax, a);
      amin = std::min(amin, a);
      asum += a;
      asq += a * a;
    }
    sol.radii[j] = asum / n;
    sol.circ_spread[j] = amax - amin;
    sol.circ_std[j] = std::sqrt(std::max(0.0, asq / n - sol.radii[j] * sol.radii[j]));
    sol.image_derivative[j] = spectral_derivative(B);
  }

  for (int j = 0; j < nb; ++j) {
    if (sol.circ_spread[j] > 10.0 * cfg.circularity_tol)
      throw NumericalError("boundary " + std::to_string(j) + " image spread " +
                           std::to_string(sol.circ_spread[j]) +
                           " exceeds 10x circularity tolerance");
    if (sol.circ_spread[j] > cfg.circularity_tol) sol.circularity_warning = true;
  }

  // Slit arcs: circular interval hull of the image arguments.
  const int first_slit = kind == MapKind::Disc ? 1 : 2;
  for (int j = first_slit; j < nb; ++j) {
    const auto phi = unwrap_args(sol.boundary_images[j]);
    auto [mn, mx] = std::minmax_element(phi.begin(), phi.end());
    SlitArc arc;
    arc.boundary = j;
    arc.radius = sol.radii[j];
    arc.extent = std::min(*mx - *mn, two_pi);
    arc.alpha = std::remainder(*mn, two_pi);
    sol.slits.push_back(arc);
  }

  // SoA caches for the Cauchy kernels.
  const int total = nb * n;
  sol.eta_re.resize(total);
  sol.eta_im.resize(total);
  sol.fwd_num_re.resize(total);
  sol.fwd_num_im.resize(total);
  sol.fwd_den_re.resize(total);
  sol.fwd_den_im.resize(total);
  sol.img_re.resize(total);
  sol.img_im.resize(total);
  sol.inv_w_re.resize(total);
  sol.inv_w_im.resize(total);
  for (int j = 0; j < nb; ++j) {
    for (int k = 0; k < n; ++k) {
      const int p = j * n + k;
      const cplx e = sol.eta[j][k];
      const cplx ep = sol.etap[j][k];
      const cplx B = sol.boundary_images[j][k];
      const cplx dB = sol.image_derivative[j][k];
      sol.eta_re[p] = e.real();
      sol.eta_im[p] = e.imag();
      const cplx wn = B * ep;
      sol.fwd_num_re[p] = wn.real();
      sol.fwd_num_im[p] = wn.imag();
      sol.fwd_den_re[p] = ep.real();
      sol.fwd_den_im[p] = ep.imag();
      sol.img_re[p] = B.real();
      sol.img_im[p] = B.imag();
      const cplx wi = e * dB;
      sol.inv_w_re[p] = wi.real();
      sol.inv_w_im[p] = wi.imag();
    }
  }

  // Angle tables for boundary 0 and (annular) boundary 1: image argument vs
  // boundary point, used to project near-circle queries onto the boundary.
  const int tables = kind == MapKind::Annular ? 2 : 1;
  sol.angle_table.resize(tables);
  for (int j = 0; j < tables; ++j) {
    auto phi = unwrap_args(sol.boundary_images[j]);
    std::vector<cplx> pts = sol.eta[j];
    if (phi.back() < phi.front()) {  // clockwise traversal: flip to ascending
      std::reverse(phi.begin(), phi.end());
      std::reverse(pts.begin(), pts.end());
    }
    phi.push_back(phi.front() + two_pi);
    pts.push_back(pts.front());
    sol.angle_table[j] = std::move(phi);
    sol.table_pts_.push_back(std::move(pts));
  }
  return sol;
}

MappingSolution solve_slitmap(const DiscretizedBoundary& db, MapKind kind, cplx origin,
                              std::optional<cplx> z1, const SlitmapConfig& cfg) {
  DiscretizedBoundary shifted = db;
  for (auto& b : shifted.boundaries)
    for (auto& e : b.eta) e -= origin;
  const std::optional<cplx> z1s =
      z1 ? std::optional<cplx>(*z1 - origin) : std::nullopt;
  KernelPair kp = assemble_kernels(shifted);
  Eigen::VectorXd gamma = rhs_gamma(shifted, kind, z1s);
  DensitySolution ds = solve_density(kp, gamma);
  return boundary_map(shifted, kind, origin, z1, gamma, ds, cfg);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

bool MappingSolution::inside_domain(cplx z) const {
  const cplx zs = z - origin;
  if (!point_in_polygon(zs, eta[0])) return false;
  for (int j = 1; j < nb; ++j)
    if (point_in_polygon(zs, eta[j])) return false;
  return true;
}

double MappingSolution::boundary_clearance(cplx z) const {
  const cplx zs = z - origin;
  const double w = two_pi / n;
  double worst = std::numeric_limits<double>::infinity();
  for (int j = 0; j < nb; ++j) {
    for (int k = 0; k < n; ++k) {
      const double d = std::abs(zs - eta[j][k]) - 5.0 * w * std::abs(etap[j][k]);
      worst = std::min(worst, d);
    }
  }
  return worst;
}

double MappingSolution::image_exclusion(int j) const {
  double m = 0.0;
  for (const cplx& d : image_derivative[j]) m = std::max(m, std::abs(d));
  return 5.0 * (two_pi / n) * m;
}

namespace {
double arc_distance(cplx w, const SlitArc& s) {
  const double r = std::abs(w);
  double rel = std::arg(w) - s.alpha;
  rel -= two_pi * std::floor(rel / two_pi);  // into [0, 2pi)
  if (rel <= s.extent) return std::abs(r - s.radius);
  const double d0 = std::abs(w - std::polar(s.radius, s.alpha));
  const double d1 = std::abs(w - std::polar(s.radius, s.alpha + s.extent));
  return std::min(d0, d1);
}
}  // namespace

double MappingSolution::slit_distance(cplx w) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : slits) d = std::min(d, arc_distance(w, s));
  return d;
}

cplx MappingSolution::forward(cplx z) const {
  if (kind == MapKind::Annular && z1 && z == *z1) return 0.0;  // normalization point
  if (!inside_domain(z))
    throw std::domain_error("forward evaluation point is outside the domain");
  if (boundary_clearance(z) < 0.0)
    throw AccuracyError("forward evaluation point is inside the near-boundary exclusion zone");
  const cplx zs = z - origin;
  const auto s = simd::dual_cauchy_sum(eta_re.data(), eta_im.data(), fwd_num_re.data(),
                                       fwd_num_im.data(), fwd_den_re.data(),
                                       fwd_den_im.data(), eta_re.size(), zs.real(),
                                       zs.imag());
  return s.a / s.b;
}

cplx MappingSolution::raw_inverse(cplx w) const {
  const cplx s = simd::cauchy_sum(img_re.data(), img_im.data(), inv_w_re.data(),
                                  inv_w_im.data(), img_re.size(), w.real(), w.imag());
  return s * cplx(0.0, -1.0) / static_cast<double>(n) + origin;
}

cplx MappingSolution::inverse(cplx w) const {
  const double aw = std::abs(w);
  if (aw >= 1.0) throw std::domain_error("inverse evaluation point is outside the unit disc");
  if (kind == MapKind::Annular && aw <= radii[1])
    throw std::domain_error("inverse evaluation point is inside the annulus hole");
  if (aw > 1.0 - image_exclusion(0))
    throw AccuracyError("inverse evaluation point is too close to the unit circle");
  if (kind == MapKind::Annular && aw < radii[1] + image_exclusion(1))
    throw AccuracyError("inverse evaluation point is too close to the inner circle");
  for (const auto& s : slits) {
    if (arc_distance(w, s) < image_exclusion(s.boundary))
      throw AccuracyError("inverse evaluation point is too close to a slit arc");
  }
  return raw_inverse(w);
}

Polyline MappingSolution::inverse_circle(double r, int count, bool nudge_near_slit) const {
  Polyline out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double th = two_pi * i / count;
    cplx w = std::polar(r, th);
    for (const auto& s : slits) {
      // The trapezoidal quadrature stays accurate down to about two grid
      // spacings from the image contour; inside that band the query is moved
      // radially off the slit so the level curve stays complete.
      const double band = 0.4 * image_exclusion(s.boundary);
      if (arc_distance(w, s) < band) {
        if (!nudge_near_slit)
          throw AccuracyError("level-curve point is too close to a slit arc");
        const double pushed = r >= s.radius ? s.radius + band : s.radius - band;
        w = std::polar(pushed, th);
      }
    }
    out.push_back(raw_inverse(w));
  }
  return out;
}

Polyline MappingSolution::boundary_curve(int j) const {
  Polyline out = eta[j];
  for (auto& p : out) p += origin;
  return out;
}

cplx MappingSolution::boundary_point_at_angle(int j, double theta) const {
  const auto& phi = angle_table[j];
  const auto& pts = table_pts_[j];
  const double base = phi.front();
  double t = base + std::fmod(theta - base, two_pi);
  if (t < base) t += two_pi;
  auto it = std::upper_bound(phi.begin(), phi.end(), t);
  size_t i = std::max<size_t>(1, std::min(phi.size() - 1,
                                          static_cast<size_t>(it - phi.begin())));
  const double p0 = phi[i - 1], p1 = phi[i];
  const double a = p1 > p0 ? (t - p0) / (p1 - p0) : 0.0;
  return pts[i - 1] + a * (pts[i] - pts[i - 1]) + origin;
}

}  // namespace csm
