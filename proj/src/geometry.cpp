#include "csm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace csm {

double signed_area(std::span<const cplx> poly) {
  double a = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const cplx& p = poly[i];
    const cplx& q = poly[(i + 1) % n];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

cplx polygon_centroid(std::span<const cplx> poly) {
  double a = 0.0;
  cplx c = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const cplx& p = poly[i];
    const cplx& q = poly[(i + 1) % n];
    const double cross = p.real() * q.imag() - q.real() * p.imag();
    a += cross;
    c += (p + q) * cross;
  }
  if (std::abs(a) < 1e-300) return poly.empty() ? cplx{} : poly[0];
  return c / (3.0 * a);
}

double polyline_length(std::span<const cplx> pts, bool closed) {
  double L = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) L += std::abs(pts[i + 1] - pts[i]);
  if (closed && pts.size() > 1) L += std::abs(pts.front() - pts.back());
  return L;
}

bool point_in_polygon(cplx p, std::span<const cplx> poly) {
  bool in = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const double yi = poly[i].imag(), yj = poly[j].imag();
    const double xi = poly[i].real(), xj = poly[j].real();
    if ((yi > p.imag()) != (yj > p.imag())) {
      const double xint = xi + (p.imag() - yi) / (yj - yi) * (xj - xi);
      if (p.real() < xint) in = !in;
    }
  }
  return in;
}

bool inside_region(cplx p, std::span<const Polyline> region) {
  if (region.empty() || !point_in_polygon(p, region[0])) return false;
  for (size_t i = 1; i < region.size(); ++i)
    if (point_in_polygon(p, region[i])) return false;
  return true;
}

namespace {
inline double orient(cplx a, cplx b, cplx c) {
  return (b.real() - a.real()) * (c.imag() - a.imag()) -
         (b.imag() - a.imag()) * (c.real() - a.real());
}
inline bool on_segment(cplx a, cplx b, cplx p) {
  return std::min(a.real(), b.real()) - 1e-15 <= p.real() &&
         p.real() <= std::max(a.real(), b.real()) + 1e-15 &&
         std::min(a.imag(), b.imag()) - 1e-15 <= p.imag() &&
         p.imag() <= std::max(a.imag(), b.imag()) + 1e-15;
}
}  // namespace

bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
  const double d1 = orient(c, d, a);
  const double d2 = orient(c, d, b);
  const double d3 = orient(a, b, c);
  const double d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

int count_crossings(std::span<const cplx> path, std::span<const cplx> loop) {
  int count = 0;
  const size_t nl = loop.size();
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    for (size_t j = 0; j < nl; ++j) {
      if (segments_intersect(path[i], path[i + 1], loop[j], loop[(j + 1) % nl])) ++count;
    }
  }
  return count;
}

int count_self_intersections(std::span<const cplx> path) {
  int count = 0;
  const size_t n = path.size();
  for (size_t i = 0; i + 1 < n; ++i) {
    for (size_t j = i + 2; j + 1 < n; ++j) {
      if (segments_intersect(path[i], path[i + 1], path[j], path[j + 1])) ++count;
    }
  }
  return count;
}

double dist_point_segment(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double dist_to_polyline(cplx p, std::span<const cplx> pts, bool closed) {
  double d = std::numeric_limits<double>::infinity();
  const size_t n = pts.size();
  for (size_t i = 0; i + 1 < n; ++i) d = std::min(d, dist_point_segment(p, pts[i], pts[i + 1]));
  if (closed && n > 1) d = std::min(d, dist_point_segment(p, pts[n - 1], pts[0]));
  return d;
}

Polyline densify(std::span<const cplx> pts, double max_spacing, bool closed) {
  Polyline out;
  if (pts.empty()) return out;
  const size_t n = pts.size();
  const size_t last = closed ? n : n - 1;
  out.reserve(n);
  for (size_t i = 0; i < last; ++i) {
    const cplx a = pts[i];
    const cplx b = pts[(i + 1) % n];
    out.push_back(a);
    const double len = std::abs(b - a);
    if (len > max_spacing) {
      const int extra = static_cast<int>(std::ceil(len / max_spacing)) - 1;
      for (int k = 1; k <= extra; ++k)
        out.push_back(a + (b - a) * (static_cast<double>(k) / (extra + 1)));
    }
  }
  if (!closed) out.push_back(pts[n - 1]);
  return out;
}

double BBox::diameter() const { return std::hypot(width(), height()); }

BBox bbox_of(std::span<const cplx> pts) {
  BBox b;
  if (pts.empty()) return b;
  b.xmin = b.xmax = pts[0].real();
  b.ymin = b.ymax = pts[0].imag();
  for (const cplx& p : pts) {
    b.xmin = std::min(b.xmin, p.real());
    b.xmax = std::max(b.xmax, p.real());
    b.ymin = std::min(b.ymin, p.imag());
    b.ymax = std::max(b.ymax, p.imag());
  }
  return b;
}

BBox bbox_of(std::span<const Polyline> polys) {
  BBox b;
  bool first = true;
  for (const auto& poly : polys) {
    if (poly.empty()) continue;
    BBox pb = bbox_of(poly);
    if (first) {
      b = pb;
      first = false;
    } else {
      b.xmin = std::min(b.xmin, pb.xmin);
      b.xmax = std::max(b.xmax, pb.xmax);
      b.ymin = std::min(b.ymin, pb.ymin);
      b.ymax = std::max(b.ymax, pb.ymax);
    }
  }
  return b;
}

SegmentGrid::SegmentGrid(std::span<const cplx> path, double cell, bool closed)
    : pts_(path.begin(), path.end()), cell_(cell > 0 ? cell : 1.0) {
  const size_t n = pts_.size();
  if (n < 2) return;
  segs_.reserve(n);
  for (size_t i = 0; i + 1 < n; ++i) segs_.push_back({pts_[i], pts_[i + 1]});
  if (closed) segs_.push_back({pts_[n - 1], pts_[0]});
  for (int i = 0; i < static_cast<int>(segs_.size()); ++i) insert_segment(i);
}

void SegmentGrid::insert_segment(int idx) {
  const auto& [a, b] = segs_[idx];
  const long x0 = static_cast<long>(std::floor(std::min(a.real(), b.real()) / cell_));
  const long x1 = static_cast<long>(std::floor(std::max(a.real(), b.real()) / cell_));
  const long y0 = static_cast<long>(std::floor(std::min(a.imag(), b.imag()) / cell_));
  const long y1 = static_cast<long>(std::floor(std::max(a.imag(), b.imag()) / cell_));
  for (long x = x0; x <= x1; ++x)
    for (long y = y0; y <= y1; ++y) table_[{x, y}].push_back(idx);
}

bool SegmentGrid::within(cplx p, double r) const {
  return min_dist(p, r) <= r;
}

double SegmentGrid::min_dist(cplx p, double cap) const {
  double best = std::numeric_limits<double>::infinity();
  const long reach = static_cast<long>(std::ceil(cap / cell_)) + 1;
  const long cx = static_cast<long>(std::floor(p.real() / cell_));
  const long cy = static_cast<long>(std::floor(p.imag() / cell_));
  for (long x = cx - reach; x <= cx + reach; ++x) {
    for (long y = cy - reach; y <= cy + reach; ++y) {
      auto it = table_.find({x, y});
      if (it == table_.end()) continue;
      for (int idx : it->second) {
        best = std::min(best, dist_point_segment(p, segs_[idx].first, segs_[idx].second));
      }
    }
  }
  return best;
}

}  // namespace csm
