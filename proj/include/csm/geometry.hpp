#pragma once

#include <span>
#include <unordered_map>

#include "csm/types.hpp"

namespace csm {

/// Shoelace area of a closed polyline (vertices without repeated endpoint).
/// Positive for counterclockwise orientation.
double signed_area(std::span<const cplx> poly);

/// Area centroid of a closed polyline.
cplx polygon_centroid(std::span<const cplx> poly);

double polyline_length(std::span<const cplx> pts, bool closed = false);

/// Even-odd rule; points on an edge are classified arbitrarily but stably.
bool point_in_polygon(cplx p, std::span<const cplx> poly);

/// Inside the first polyline and outside all the others.
bool inside_region(cplx p, std::span<const Polyline> region);

bool segments_intersect(cplx a, cplx b, cplx c, cplx d);

/// Number of segment crossings between an open path and a closed loop.
int count_crossings(std::span<const cplx> path, std::span<const cplx> loop);

/// Self-intersections between non-adjacent segments of an open path.
int count_self_intersections(std::span<const cplx> path);

double dist_point_segment(cplx p, cplx a, cplx b);

double dist_to_polyline(cplx p, std::span<const cplx> pts, bool closed);

/// Inserts interpolated vertices so that adjacent spacing <= max_spacing.
Polyline densify(std::span<const cplx> pts, double max_spacing, bool closed);

struct BBox {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double diameter() const;
};
BBox bbox_of(std::span<const cplx> pts);
BBox bbox_of(std::span<const Polyline> polys);

/// Uniform-grid spatial hash over segments for radius queries against a path.
class SegmentGrid {
 public:
  SegmentGrid() = default;
  SegmentGrid(std::span<const cplx> path, double cell, bool closed = false);
  /// True when some segment lies within r of p.
  bool within(cplx p, double r) const;
  /// Distance to the nearest segment, or +inf when nothing is within cap.
  double min_dist(cplx p, double cap) const;

 private:
  struct Key {
    long x, y;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return std::hash<long>()(k.x * 73856093L ^ k.y * 19349663L);
    }
  };
  void insert_segment(int idx);
  std::vector<cplx> pts_;
  std::vector<std::pair<cplx, cplx>> segs_;
  double cell_ = 1.0;
  std::unordered_map<Key, std::vector<int>, KeyHash> table_;
};

}  // namespace csm
