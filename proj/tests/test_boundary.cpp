#include "csm/boundary.hpp"

#include "csm/geometry.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csm;

TEST_CASE("grading map endpoints and midpoint") {
  for (int p : {2, 3, 5}) {
    CHECK(grading_map(0.0, p) == doctest::Approx(0.0));
    CHECK(grading_map(pi, p) == doctest::Approx(pi).epsilon(1e-13));
    CHECK(grading_map(two_pi, p) == doctest::Approx(two_pi).epsilon(1e-13));
    CHECK(grading_map_derivative(0.0, p) == doctest::Approx(0.0));
    CHECK(grading_map_derivative(two_pi, p) == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(grading_map(1.0, 1), std::invalid_argument);
}

TEST_CASE("grading map is strictly monotone on a dense grid") {
  const int grid = 10000;
  for (int p : {2, 3, 4}) {
    double prev = -1e-9;
    for (int i = 0; i <= grid; ++i) {
      const double s = grading_map(two_pi * i / grid, p);
      CHECK(s > prev);
      prev = s;
    }
  }
}

TEST_CASE("smooth closed spline circle parameterizes to circle samples") {
  const auto curve = fx::spline_circle(0.0, 1.0, 32, true);
  const auto bs = parameterize(curve, 3, 4);
  for (int k = 0; k < 4; ++k) {
    const cplx expect = std::polar(1.0, two_pi * k / 4);
    CHECK(std::abs(bs.eta[k] - expect) < 5e-3);  // spline-fit tolerance
  }
  CHECK(bs.corner_nodes.empty());
}

TEST_CASE("square corners land on grid with vanishing derivative") {
  const auto curve = fx::square_curve(1.0, true);
  const int n = 1024;
  const auto bs = parameterize(curve, 3, n);
  REQUIRE(bs.corner_nodes.size() == 4);
  const cplx corners[4] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (int i = 0; i < 4; ++i) {
    const int node = bs.corner_nodes[i];
    CHECK(node == i * n / 4);
    CHECK(std::abs(bs.eta[node] - corners[i]) < 1e-12);
    CHECK(std::abs(bs.etap[node]) == 0.0);
  }
}

TEST_CASE("samples cluster near corners") {
  const auto curve = fx::square_curve(1.0, true);
  const int n = 256;
  const auto bs = parameterize(curve, 3, n);
  // Arclength position along the perimeter, distance to the nearest corner.
  const double perim = 8.0;
  auto corner_dist = [&](cplx z) {
    double d = 1e9;
    for (cplx c : {cplx{1, 1}, cplx{-1, 1}, cplx{-1, -1}, cplx{1, -1}})
      d = std::min(d, std::abs(z - c));
    return d;
  };
  const double band = 0.05 * perim / 4;  // 5% of a side's span
  int near_corner = 0, near_mid = 0;
  for (const cplx& z : bs.eta) {
    if (corner_dist(z) < band) ++near_corner;
    double mid_d = 1e9;
    for (cplx m : {cplx{0, 1}, cplx{0, -1}, cplx{1, 0}, cplx{-1, 0}})
      mid_d = std::min(mid_d, std::abs(z - m));
    if (mid_d < band) ++near_mid;
  }
  CHECK(near_corner >= 3 * near_mid);
}

TEST_CASE("parameterize rejects open chains and bad corner counts") {
  BoundaryCurve open_chain;
  open_chain.segments.push_back(LineSeg{{0, 0}, {1, 0}});
  open_chain.segments.push_back(LineSeg{{1, 0}, {1, 1}});
  open_chain.corner_count = 2;
  CHECK_THROWS_AS(parameterize(open_chain, 3, 64), GeometryError);

  auto square = fx::square_curve(1.0, true);
  square.corner_count = 3;
  CHECK_THROWS_AS(parameterize(square, 3, 64), GeometryError);
}

TEST_CASE("orientation signs of parameterized boundaries") {
  const auto spec = fx::two_hole_domain(256);
  const auto db = parameterize_domain(spec);
  CHECK(signed_area(db.boundaries[0].eta) > 0);
  CHECK(signed_area(db.boundaries[1].eta) < 0);
  CHECK(signed_area(db.boundaries[2].eta) < 0);
}

TEST_CASE("derivative is consistent with central differences away from corners") {
  const auto spec = fx::square_hole_domain(512);
  const auto bs = parameterize(spec.boundaries[0], 3, 512);
  const int n = 512;
  const double h = two_pi / n;
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    bool near_corner = false;
    for (int c : bs.corner_nodes)
      if (std::abs(k - c) < 8 || std::abs(k - c) > n - 8) near_corner = true;
    if (near_corner) continue;
    const cplx fd = (bs.eta[(k + 1) % n] - bs.eta[(k + n - 1) % n]) / (2 * h);
    worst = std::max(worst, std::abs(fd - bs.etap[k]) / std::max(1.0, std::abs(bs.etap[k])));
  }
  CHECK(worst < 5e-3);  // O(h^2) with the local derivative scale
}

TEST_CASE("case classification") {
  // Disc with one off-center hole: centroid stays in the material.
  DomainSpec disc;
  disc.boundaries.push_back(fx::spline_circle(0.0, 1.0, 32, true));
  disc.boundaries.push_back(fx::spline_circle({0.45, 0.0}, 0.18, 16, false));
  disc.origin = 0.0;
  CHECK(classify_case(disc).kind == CaseKind::CaseI);

  // Annulus-like region: centroid falls into the central hole.
  const auto annular = fx::annular_domain(256);
  const auto cls = classify_case(annular);
  CHECK(cls.kind == CaseKind::CaseII);
  CHECK(cls.hole_index == 1);
  CHECK(std::abs(cls.z1 - cplx{0.05, 0.0}) < 0.2);  // auto-placement inside that hole

  // Symmetric two-hole dumbbell: centroid sits between the holes, in material.
  DomainSpec dumbbell;
  dumbbell.boundaries.push_back(fx::spline_circle(0.0, 1.5, 40, true));
  dumbbell.boundaries.push_back(fx::spline_circle({0.7, 0.0}, 0.3, 20, false));
  dumbbell.boundaries.push_back(fx::spline_circle({-0.7, 0.0}, 0.3, 20, false));
  dumbbell.origin = 0.0;
  const auto dcls = classify_case(dumbbell);
  CHECK(dcls.kind == CaseKind::CaseI);
  CHECK(std::abs(dcls.centroid) < 1e-6);  // symmetry pins the centroid at 0
}

TEST_CASE("normalize_for_case relabels the anchor hole to index 1") {
  DomainSpec spec;
  spec.boundaries.push_back(fx::spline_circle(0.0, 2.0, 40, true));
  spec.boundaries.push_back(fx::spline_circle({1.2, 0.0}, 0.2, 16, false));
  spec.boundaries.push_back(fx::spline_circle({0.0, 0.0}, 0.6, 24, false));  // central
  spec.origin = cplx{0, 1.2};
  const auto cls = classify_case(spec);
  REQUIRE(cls.kind == CaseKind::CaseII);
  CHECK(cls.hole_index == 2);
  const auto norm = normalize_for_case(spec, cls);
  const auto poly = boundary_polyline(norm.boundaries[1], 3, 128);
  CHECK(point_in_polygon(cls.z1, poly));
  CHECK(norm.z1.has_value());
}
