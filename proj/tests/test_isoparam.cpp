#include "csm/isoparam.hpp"

#include "csm/geometry.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csm;

namespace {

Polyline ring(double r, int n = 1000) {
  Polyline p;
  for (int i = 0; i < n; ++i) p.push_back(std::polar(r, two_pi * i / n));
  return p;
}

/// Identity-map spacing context: level curves are literal circles.
IsoContext identity_ctx(double r_down) {
  IsoContext ctx;
  ctx.r_down = r_down;
  ctx.level_curve = [](double r) { return ring(r); };
  return ctx;
}

}  // namespace

TEST_CASE("inscribed circle of a concentric annulus") {
  std::vector<Polyline> region = {ring(1.0, 1024), ring(0.4, 1024)};
  const auto mic = max_inscribed_circle(region);
  CHECK(mic.radius == doctest::Approx(0.3).epsilon(1e-3));
  CHECK(std::abs(mic.center) == doctest::Approx(0.7).epsilon(1e-2));
}

TEST_CASE("inscribed circle of a square") {
  Polyline sq;
  for (int i = 0; i < 400; ++i) {
    const double t = 4.0 * i / 400;  // perimeter parameter on [-1,1]^2
    const int side = static_cast<int>(t);
    const double u = 2 * (t - side) - 1;
    switch (side) {
      case 0: sq.push_back({u, -1}); break;
      case 1: sq.push_back({1, u}); break;
      case 2: sq.push_back({-u, 1}); break;
      default: sq.push_back({-1, -u});
    }
  }
  std::vector<Polyline> region = {sq};
  const auto mic = max_inscribed_circle(region);
  CHECK(mic.radius == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(std::abs(mic.center) < 3e-2);
}

TEST_CASE("inscribed circle agrees with the grid-search oracle") {
  std::vector<Polyline> region = {ring(1.0, 600), Polyline{}, Polyline{}};
  region[1] = ring(0.2, 200);
  for (auto& p : region[1]) p += cplx{0.5, 0.0};
  region[2] = ring(0.15, 200);
  for (auto& p : region[2]) p += cplx{-0.45, 0.25};
  const auto mic = max_inscribed_circle(region);
  const auto oracle = fx::grid_mic(region, 501);
  CHECK(mic.radius == doctest::Approx(oracle.radius).epsilon(0.01));
}

TEST_CASE("degenerate inscribed-circle queries") {
  CHECK_THROWS_AS(max_inscribed_circle(std::vector<Polyline>{Polyline{{0, 0}, {1, 1}}}),
                  GeometryError);
  // Hole swallows the outer boundary: region is empty, radius 0 signals it.
  std::vector<Polyline> empty_region = {ring(1.0, 64), ring(1.1, 64)};
  CHECK(max_inscribed_circle(empty_region).radius == 0.0);
}

TEST_CASE("gap_region polyline counts") {
  auto ctx = identity_ctx(0.0);
  CHECK(gap_region(ctx, 1.0, 0.5).size() == 2);

  ctx.holes.push_back({0.7, ring(0.7, 128)});
  CHECK(gap_region(ctx, 1.0, 0.5).size() == 3);  // hole radius falls inside the gap
  CHECK(gap_region(ctx, 1.0, 0.8).size() == 2);

  // Terminal case-I query: lower curve omitted, interior holes included.
  const auto term = gap_region(ctx, 0.9, 0.9);
  CHECK(term.size() == 2);
}

TEST_CASE("spacing control reproduces the concentric ladder") {
  auto ctx = identity_ctx(0.35);
  const double C = 0.1, eps = 0.01;
  const auto fam = spacing_control(ctx, C, eps);
  REQUIRE(fam.k() == 3);
  CHECK(std::abs(fam.radii[0] - 0.9) <= eps * C);
  CHECK(std::abs(fam.radii[1] - 0.7) <= eps * C);
  CHECK(std::abs(fam.radii[2] - 0.5) <= eps * C);
  CHECK(fam.residual_mic == doctest::Approx(0.075).epsilon(1e-2));
  CHECK(fam.residual_mic < C);
  // First gap C/2, interior gaps C, certified by the recorded MIC values.
  CHECK(std::abs(fam.gap_mic[0] - C / 2) <= eps * C / 2);
  CHECK(std::abs(fam.gap_mic[1] - C) <= eps * C);
  CHECK(std::abs(fam.gap_mic[2] - C) <= eps * C);
}

TEST_CASE("oversized spacing constant yields an empty family") {
  auto ctx = identity_ctx(0.35);
  const auto fam = spacing_control(ctx, 1.0, 0.01);  // C/2 > domain MIC = 0.325
  CHECK(fam.k() == 0);
  CHECK(fam.residual_mic == doctest::Approx(0.325).epsilon(1e-2));
}

TEST_CASE("invalid spacing parameters") {
  auto ctx = identity_ctx(0.0);
  CHECK_THROWS_AS(spacing_control(ctx, -1.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(spacing_control(ctx, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gap_region(ctx, 0.4, 0.6), std::invalid_argument);
}

TEST_CASE("spacing control on a solved two-hole mapping") {
  const auto spec = fx::two_hole_domain(512);
  const auto sol = solve_slitmap(parameterize_domain(spec), MapKind::Disc, spec.origin);
  const double C = 0.22, eps = 0.01;
  auto ctx = make_iso_context(sol, 600, C);
  const auto fam = spacing_control(ctx, C, eps);
  REQUIRE(fam.k() >= 2);

  // Monotone radii, non-intersecting curves, containment inside the material.
  std::vector<Polyline> region;
  for (int j = 0; j < sol.nb; ++j) region.push_back(sol.boundary_curve(j));
  for (int i = 0; i < fam.k(); ++i) {
    if (i > 0) CHECK(fam.radii[i] < fam.radii[i - 1]);
    for (const cplx& z : fam.curves[i]) CHECK(inside_region(z, region));
    if (i > 0) {
      Polyline closed = fam.curves[i];
      closed.push_back(closed.front());
      CHECK(count_crossings(closed, fam.curves[i - 1]) == 0);
    }
  }

  // Certified gaps agree with the independent grid-search oracle.
  for (int i = 0; i < std::min(2, fam.k()); ++i) {
    auto gap = gap_region(ctx, i == 0 ? 1.0 : fam.radii[i - 1], fam.radii[i]);
    const auto oracle = fx::grid_mic(gap, 401);
    size_t pts = 0;
    for (const auto& poly : gap) pts += poly.size();
    const double rel_tol = std::max(0.01, 2.0 / std::sqrt(static_cast<double>(pts)));
    CHECK(std::abs(fam.gap_mic[i] - oracle.radius) <= rel_tol * oracle.radius + 2e-3);
  }
}
