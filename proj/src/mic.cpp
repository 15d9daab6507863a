// Maximum inscribed circle through the Delaunay/Voronoi duality: the
// circumcenters of the Delaunay triangulation of the pooled boundary points
// are the Voronoi vertices, and the circumradius is the distance to the
// nearest input site. Boost.Polygon's sweep provides the robust construction.

#include <boost/polygon/voronoi.hpp>

#include <cmath>
#include <unordered_set>

#include "csm/geometry.hpp"
#include "csm/isoparam.hpp"

namespace csm {

namespace {

struct IntPt {
  int32_t x, y;
  bool operator==(const IntPt&) const = default;
};
struct IntPtHash {
  size_t operator()(const IntPt& p) const {
    return std::hash<int64_t>()(static_cast<int64_t>(p.x) * 1000003 ^ p.y);
  }
};

}  // namespace

InscribedCircle max_inscribed_circle(std::span<const Polyline> region) {
  size_t total = 0;
  for (const auto& poly : region) total += poly.size();
  if (total < 3) throw GeometryError("inscribed-circle query needs at least 3 boundary points");

  const BBox bb = bbox_of(region);
  const double extent = std::max(std::max(bb.width(), bb.height()), 1e-12);
  const double scale = (1u << 28) / extent;
  const cplx base(bb.xmin, bb.ymin);

  std::vector<IntPt> sites;
  std::vector<cplx> site_pts;
  sites.reserve(total);
  std::unordered_set<IntPt, IntPtHash> seen;
  for (const auto& poly : region) {
    for (const cplx& p : poly) {
      IntPt ip{static_cast<int32_t>(std::lround((p.real() - base.real()) * scale)),
               static_cast<int32_t>(std::lround((p.imag() - base.imag()) * scale))};
      if (seen.insert(ip).second) {
        sites.push_back(ip);
        site_pts.push_back(p);
      }
    }
  }
  if (sites.size() < 3) throw GeometryError("inscribed-circle query needs at least 3 distinct points");

  boost::polygon::voronoi_diagram<double> vd;
  boost::polygon::voronoi_builder<int32_t> builder;
  for (const auto& s : sites) builder.insert_point(s.x, s.y);
  builder.construct(&vd);

  InscribedCircle best;  // radius 0 signals an empty region
  for (const auto& vertex : vd.vertices()) {
    const cplx center = base + cplx(vertex.x() / scale, vertex.y() / scale);
    if (!point_in_polygon(center, region[0])) continue;
    bool in_hole = false;
    for (size_t h = 1; h < region.size(); ++h) {
      if (point_in_polygon(center, region[h])) {
        in_hole = true;
        break;
      }
    }
    if (in_hole) continue;
    const auto* edge = vertex.incident_edge();
    const size_t src = edge->cell()->source_index();
    const double r = std::abs(center - site_pts[src]);
    if (r > best.radius) {
      best.radius = r;
      best.center = center;
    }
  }
  return best;
}

}  // namespace csm
