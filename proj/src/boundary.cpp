#include "csm/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "csm/bspline.hpp"
#include "csm/geometry.hpp"

namespace csm {

namespace {

struct SegmentVisitor {
  template <typename F>
  static auto visit(const Segment& s, F&& f) {
    return std::visit(std::forward<F>(f), s);
  }
};

double arc_length(const ArcSeg& a) { return a.radius * std::abs(a.sweep); }

}  // namespace

double segment_param_upper(const Segment& s) {
  return std::visit(
      [](const auto& seg) -> double {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, LineSeg>) {
          return std::abs(seg.b - seg.a);
        } else if constexpr (std::is_same_v<T, ArcSeg>) {
          return arc_length(seg);
        } else {
          return seg.closed ? static_cast<double>(seg.ctrl.size())
                            : static_cast<double>(seg.ctrl.size()) - 3.0;
        }
      },
      s);
}

cplx segment_eval(const Segment& s, double u) {
  return std::visit(
      [u](const auto& seg) -> cplx {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, LineSeg>) {
          const double len = std::abs(seg.b - seg.a);
          return seg.a + (seg.b - seg.a) * (u / len);
        } else if constexpr (std::is_same_v<T, ArcSeg>) {
          const double sgn = seg.sweep >= 0 ? 1.0 : -1.0;
          const double phi = seg.start_angle + sgn * u / seg.radius;
          return seg.center + seg.radius * std::polar(1.0, phi);
        } else {
          return seg.closed ? spline_eval_closed(seg.ctrl, u) : spline_eval_open(seg.ctrl, u);
        }
      },
      s);
}

cplx segment_derivative(const Segment& s, double u) {
  return std::visit(
      [u](const auto& seg) -> cplx {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, LineSeg>) {
          return (seg.b - seg.a) / std::abs(seg.b - seg.a);  // |eta'| = 1
        } else if constexpr (std::is_same_v<T, ArcSeg>) {
          const double sgn = seg.sweep >= 0 ? 1.0 : -1.0;
          const double phi = seg.start_angle + sgn * u / seg.radius;
          return cplx(0, 1) * sgn * std::polar(1.0, phi);  // |eta'| = 1
        } else {
          return seg.closed ? spline_deriv_closed(seg.ctrl, u) : spline_deriv_open(seg.ctrl, u);
        }
      },
      s);
}

cplx segment_head(const Segment& s) { return segment_eval(s, 0.0); }

cplx segment_tail(const Segment& s) { return segment_eval(s, segment_param_upper(s)); }

Segment segment_reversed(const Segment& s) {
  return std::visit(
      [](const auto& seg) -> Segment {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, LineSeg>) {
          return LineSeg{seg.b, seg.a};
        } else if constexpr (std::is_same_v<T, ArcSeg>) {
          ArcSeg r = seg;
          r.start_angle = seg.start_angle + seg.sweep;
          r.sweep = -seg.sweep;
          return r;
        } else {
          SplineSeg r = seg;
          std::reverse(r.ctrl.begin(), r.ctrl.end());
          return r;
        }
      },
      s);
}

cplx eval_spline(const SplineSeg& s, double t) {
  return s.closed ? spline_eval_closed(s.ctrl, t) : spline_eval_open(s.ctrl, t);
}

cplx eval_spline_derivative(const SplineSeg& s, double t) {
  return s.closed ? spline_deriv_closed(s.ctrl, t) : spline_deriv_open(s.ctrl, t);
}

// ---------------------------------------------------------------------------
// Grading
// ---------------------------------------------------------------------------

namespace {

struct GradingTerms {
  double v, vp, w, wp;  // v(t), v'(t), v(2pi-t), v'(2pi-t)
};

GradingTerms grading_terms(double t, int p) {
  const double a = 1.0 / p - 0.5;
  const double b = 1.0 / p;
  auto v = [&](double x) {
    const double r = (pi - x) / pi;
    return a * r * r * r + b * (x - pi) / pi + 0.5;
  };
  auto vp = [&](double x) {
    const double r = (pi - x) / pi;
    return -3.0 * a * r * r / pi + b / pi;
  };
  return {v(t), vp(t), v(two_pi - t), vp(two_pi - t)};
}

}  // namespace

double grading_map(double t_hat, int p) {
  if (p < 2) throw std::invalid_argument("grading parameter p must be >= 2");
  t_hat = std::clamp(t_hat, 0.0, two_pi);
  const auto g = grading_terms(t_hat, p);
  const double phi = std::pow(g.v, p);
  const double psi = std::pow(g.w, p);
  return two_pi * phi / (phi + psi);
}

double grading_map_derivative(double t_hat, int p) {
  if (p < 2) throw std::invalid_argument("grading parameter p must be >= 2");
  t_hat = std::clamp(t_hat, 0.0, two_pi);
  const auto g = grading_terms(t_hat, p);
  const double phi = std::pow(g.v, p);
  const double psi = std::pow(g.w, p);
  const double phip = p * std::pow(g.v, p - 1) * g.vp;
  const double psip = -p * std::pow(g.w, p - 1) * g.wp;
  const double S = phi + psi;
  return two_pi * (phip * psi - phi * psip) / (S * S);
}

// ---------------------------------------------------------------------------
// Parameterization
// ---------------------------------------------------------------------------

BoundarySamples parameterize(const BoundaryCurve& curve, int p, int n) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("n must be a positive even integer");
  if (curve.segments.empty()) throw GeometryError("boundary has no segments");

  const int pj = curve.corner_count;
  BoundarySamples out;
  out.eta.resize(n);
  out.etap.resize(n);

  if (pj == 0) {
    if (curve.segments.size() != 1 || !std::holds_alternative<SplineSeg>(curve.segments[0]) ||
        !std::get<SplineSeg>(curve.segments[0]).closed) {
      throw GeometryError("corner count 0 requires exactly one closed spline segment");
    }
    const auto& seg = std::get<SplineSeg>(curve.segments[0]);
    const double k = static_cast<double>(seg.ctrl.size());
    for (int i = 0; i < n; ++i) {
      const double t = two_pi * i / n;
      const double u = t * k / two_pi;
      out.eta[i] = spline_eval_closed(seg.ctrl, u);
      out.etap[i] = spline_deriv_closed(seg.ctrl, u) * (k / two_pi);
    }
    return out;
  }

  if (pj != static_cast<int>(curve.segments.size()))
    throw GeometryError("corner count must equal the number of segment joints");

  // Chain closure check against the curve's own scale.
  std::vector<cplx> joints;
  for (const auto& s : curve.segments) {
    joints.push_back(segment_head(s));
    joints.push_back(segment_tail(s));
  }
  const double diam = bbox_of(joints).diameter();
  const double tol = 1e-9 * std::max(diam, 1e-12);
  for (int i = 0; i < pj; ++i) {
    const cplx tail = segment_tail(curve.segments[i]);
    const cplx head = segment_head(curve.segments[(i + 1) % pj]);
    if (std::abs(tail - head) > tol)
      throw GeometryError("segment chain is not closed at joint " + std::to_string(i));
  }

  const double sub = two_pi / pj;
  for (int i = 0; i < n; ++i) {
    const double t = two_pi * i / n;
    int si = std::min(static_cast<int>(t / sub), pj - 1);
    const double tau = t - si * sub;
    const double x = pj * tau;  // in [0, 2pi]
    const double sg = grading_map(x, p);
    const double sgp = grading_map_derivative(x, p);
    const Segment& seg = curve.segments[si];
    const double upper = segment_param_upper(seg);
    const double u = upper * sg / two_pi;
    out.eta[i] = segment_eval(seg, u);
    out.etap[i] = segment_derivative(seg, u) * (upper * pj * sgp / two_pi);
    if (sgp == 0.0) out.corner_nodes.push_back(i);
  }
  return out;
}

DiscretizedBoundary parameterize_domain(const DomainSpec& spec) {
  DiscretizedBoundary db;
  db.n = spec.samples_per_boundary;
  db.boundaries.reserve(spec.boundaries.size());
  for (const auto& b : spec.boundaries)
    db.boundaries.push_back(parameterize(b, spec.grading_p, db.n));
  return db;
}

Polyline boundary_polyline(const BoundaryCurve& curve, int p, int n) {
  return parameterize(curve, p, n).eta;
}

// ---------------------------------------------------------------------------
// Case classification
// ---------------------------------------------------------------------------

namespace {

// Representative interior point of a closed polyline: centroid when inside,
// otherwise a coarse farthest-from-boundary grid search.
cplx interior_point(const Polyline& poly) {
  const cplx c = polygon_centroid(poly);
  if (point_in_polygon(c, poly)) return c;
  const BBox bb = bbox_of(poly);
  cplx best = c;
  double best_d = -1.0;
  const int g = 64;
  for (int iy = 1; iy < g; ++iy) {
    for (int ix = 1; ix < g; ++ix) {
      const cplx pt(bb.xmin + bb.width() * ix / g, bb.ymin + bb.height() * iy / g);
      if (!point_in_polygon(pt, poly)) continue;
      const double d = dist_to_polyline(pt, poly, true);
      if (d > best_d) {
        best_d = d;
        best = pt;
      }
    }
  }
  return best;
}

}  // namespace

ClassifyResult classify_case(const DomainSpec& spec) {
  if (spec.boundaries.size() < 2)
    throw ValidationError("domain needs an outer boundary and at least one hole");

  // Dense samples for centroid and containment tests.
  const int nden = std::max(256, 4 * static_cast<int>(spec.boundaries[0].segments.size()));
  std::vector<Polyline> polys;
  polys.reserve(spec.boundaries.size());
  for (const auto& b : spec.boundaries) polys.push_back(boundary_polyline(b, spec.grading_p, nden));

  // Material centroid: hole contributions enter with negative signed area.
  double area_sum = 0.0;
  cplx weighted = 0.0;
  for (const auto& poly : polys) {
    const double a = signed_area(poly);
    weighted += polygon_centroid(poly) * a;
    area_sum += a;
  }
  ClassifyResult res;
  res.centroid = weighted / area_sum;

  for (size_t j = 1; j < polys.size(); ++j) {
    if (point_in_polygon(res.centroid, polys[j])) {
      res.kind = CaseKind::CaseII;
      res.hole_index = static_cast<int>(j);
      break;
    }
  }
  if (res.kind == CaseKind::CaseII) {
    if (spec.z1) {
      if (!point_in_polygon(*spec.z1, polys[res.hole_index]))
        throw ValidationError("Z1 does not lie inside the centroid hole");
      res.z1 = *spec.z1;
    } else {
      res.z1 = interior_point(polys[res.hole_index]);
      if (!point_in_polygon(res.z1, polys[res.hole_index]))
        throw ValidationError("cannot auto-place Z1 inside the centroid hole");
    }
  }
  return res;
}

DomainSpec normalize_for_case(const DomainSpec& spec, const ClassifyResult& cls) {
  DomainSpec out = spec;
  if (cls.kind == CaseKind::CaseII) {
    if (cls.hole_index > 1)
      std::swap(out.boundaries[1], out.boundaries[cls.hole_index]);
    out.z1 = cls.z1;
  }
  return out;
}

}  // namespace csm
