#include "csm/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "csm/geometry.hpp"
#include "json.hpp"

namespace csm {

using json = nlohmann::ordered_json;

namespace {

cplx read_point(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(what + " must be a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json point_to_json(cplx p) { return json::array({p.real(), p.imag()}); }

Segment parse_segment(const json& j, std::vector<std::string>& errors,
                      const std::string& where) {
  const std::string kind = j.value("kind", "");
  if (kind == "line") {
    LineSeg s{read_point(j.at("from"), where + ".from"), read_point(j.at("to"), where + ".to")};
    if (std::abs(s.b - s.a) == 0.0) errors.push_back(where + ": line endpoints coincide");
    return s;
  }
  if (kind == "arc") {
    ArcSeg s;
    s.center = read_point(j.at("center"), where + ".center");
    s.radius = j.at("radius").get<double>();
    s.start_angle = j.at("start_angle").get<double>();
    const double end = j.at("end_angle").get<double>();
    const bool ccw = j.value("ccw", true);
    double sween = end - s.start_angle;
    if (ccw) {
      while (sween <= 0) sween += two_pi;
    } else {
      while (sween >= 0) sween -= two_pi;
    }
    s.sweep = sween;
    if (s.radius <= 0) errors.push_back(where + ": arc radius must be positive");
    return s;
  }
  if (kind == "spline") {
    SplineSeg s;
    for (const auto& c : j.at("controls")) s.ctrl.push_back(read_point(c, where + ".controls"));
    s.closed = j.value("closed", false);
    if (s.ctrl.size() < 4) errors.push_back(where + ": spline needs at least 4 control points");
    return s;
  }
  errors.push_back(where + ": unknown segment kind '" + kind + "'");
  return LineSeg{0.0, {1.0, 0.0}};
}

BoundaryCurve reversed_curve(const BoundaryCurve& b) {
  BoundaryCurve out;
  out.corner_count = b.corner_count;
  for (auto it = b.segments.rbegin(); it != b.segments.rend(); ++it)
    out.segments.push_back(segment_reversed(*it));
  return out;
}

}  // namespace

ParsedDomain parse_domain_json(const std::string& text) {
  ParsedDomain out;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    out.errors.push_back(std::string("JSON parse error: ") + e.what());
    return out;
  }
  try {
    if (!doc.contains("boundaries") || !doc["boundaries"].is_array() ||
        doc["boundaries"].size() < 2) {
      out.errors.push_back("document needs a 'boundaries' array with an outer curve and >= 1 hole");
      return out;
    }
    int bi = 0;
    for (const auto& jb : doc["boundaries"]) {
      BoundaryCurve b;
      b.corner_count = jb.value("corners", 0);
      const std::string where = "boundaries[" + std::to_string(bi) + "]";
      if (!jb.contains("segments") || jb["segments"].empty()) {
        out.errors.push_back(where + ": no segments");
      } else {
        int si = 0;
        for (const auto& js : jb["segments"]) {
          b.segments.push_back(
              parse_segment(js, out.errors, where + ".segments[" + std::to_string(si) + "]"));
          ++si;
        }
      }
      out.spec.boundaries.push_back(std::move(b));
      ++bi;
    }
    if (doc.contains("origin")) out.spec.origin = read_point(doc["origin"], "origin");
    if (doc.contains("z1")) out.spec.z1 = read_point(doc["z1"], "z1");
    if (doc.contains("params")) {
      const auto& p = doc["params"];
      out.spec.grading_p = p.value("p", out.spec.grading_p);
      out.spec.samples_per_boundary = p.value("n", out.spec.samples_per_boundary);
    }
  } catch (const std::exception& e) {
    out.errors.push_back(std::string("invalid domain document: ") + e.what());
    return out;
  }
  if (!out.errors.empty()) return out;

  // Geometric validation; all violations are collected.
  auto& spec = out.spec;
  std::vector<cplx> joints;
  for (const auto& b : spec.boundaries)
    for (const auto& s : b.segments) {
      joints.push_back(segment_head(s));
      joints.push_back(segment_tail(s));
    }
  const double diam = std::max(bbox_of(joints).diameter(), 1e-12);
  const double tol = 1e-9 * diam;

  for (size_t j = 0; j < spec.boundaries.size(); ++j) {
    auto& b = spec.boundaries[j];
    const std::string where = "boundaries[" + std::to_string(j) + "]";
    const int nseg = static_cast<int>(b.segments.size());
    if (b.corner_count == 0) {
      if (nseg != 1 || !std::holds_alternative<SplineSeg>(b.segments[0]) ||
          !std::get<SplineSeg>(b.segments[0]).closed) {
        out.errors.push_back(where + ": corners=0 requires exactly one closed spline segment");
        continue;
      }
    } else if (b.corner_count != nseg) {
      out.errors.push_back(where + ": corner count " + std::to_string(b.corner_count) +
                           " does not match " + std::to_string(nseg) + " segment joints");
      continue;
    } else {
      for (int i = 0; i < nseg; ++i) {
        const cplx tail = segment_tail(b.segments[i]);
        const cplx head = segment_head(b.segments[(i + 1) % nseg]);
        if (std::abs(tail - head) > tol)
          out.errors.push_back(where + ": chain is open at joint " + std::to_string(i) +
                               " (gap " + std::to_string(std::abs(tail - head)) + ")");
      }
    }
  }
  if (!out.errors.empty()) return out;

  std::vector<Polyline> polys;
  for (auto& b : spec.boundaries)
    polys.push_back(boundary_polyline(b, spec.grading_p, 512));

  // Orientation: outer counterclockwise, holes clockwise; auto-fix with warning.
  for (size_t j = 0; j < spec.boundaries.size(); ++j) {
    const double area = signed_area(polys[j]);
    const bool want_ccw = j == 0;
    if ((area > 0) != want_ccw) {
      spec.boundaries[j] = reversed_curve(spec.boundaries[j]);
      std::reverse(polys[j].begin(), polys[j].end());
      out.warnings.push_back("boundaries[" + std::to_string(j) + "] was " +
                             (want_ccw ? "clockwise" : "counterclockwise") +
                             "; auto-reversed");
    }
  }

  // Disjointness and containment.
  for (size_t a = 0; a < polys.size(); ++a) {
    for (size_t b = a + 1; b < polys.size(); ++b) {
      Polyline closed_a = polys[a];
      closed_a.push_back(closed_a.front());
      if (count_crossings(closed_a, polys[b]) > 0)
        out.errors.push_back("boundaries " + std::to_string(a) + " and " + std::to_string(b) +
                             " intersect");
    }
  }
  for (size_t j = 1; j < polys.size(); ++j) {
    if (!point_in_polygon(polys[j][0], polys[0]))
      out.errors.push_back("boundaries[" + std::to_string(j) + "] is not inside the outer boundary");
    for (size_t i = 1; i < polys.size(); ++i) {
      if (i != j && point_in_polygon(polys[j][0], polys[i]) &&
          point_in_polygon(polys[j][polys[j].size() / 2], polys[i]))
        out.errors.push_back("boundaries[" + std::to_string(j) + "] is nested inside boundaries[" +
                             std::to_string(i) + "]");
    }
  }
  if (!inside_region(spec.origin, polys))
    out.errors.push_back("origin does not lie inside the material");
  if (spec.z1) {
    bool in_hole = false;
    for (size_t j = 1; j < polys.size(); ++j)
      if (point_in_polygon(*spec.z1, polys[j])) in_hole = true;
    if (!in_hole) out.errors.push_back("z1 does not lie inside any hole");
  }
  return out;
}

ParsedDomain load_domain(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    ParsedDomain bad;
    bad.errors.push_back("cannot open " + file.string());
    return bad;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_domain_json(ss.str());
}

std::string domain_to_json(const DomainSpec& spec) {
  json doc;
  doc["boundaries"] = json::array();
  for (const auto& b : spec.boundaries) {
    json jb;
    jb["corners"] = b.corner_count;
    jb["segments"] = json::array();
    for (const auto& s : b.segments) {
      json js;
      std::visit(
          [&](const auto& seg) {
            using T = std::decay_t<decltype(seg)>;
            if constexpr (std::is_same_v<T, LineSeg>) {
              js["kind"] = "line";
              js["from"] = point_to_json(seg.a);
              js["to"] = point_to_json(seg.b);
            } else if constexpr (std::is_same_v<T, ArcSeg>) {
              js["kind"] = "arc";
              js["center"] = point_to_json(seg.center);
              js["radius"] = seg.radius;
              js["start_angle"] = seg.start_angle;
              js["end_angle"] = seg.start_angle + seg.sweep;
              js["ccw"] = seg.sweep >= 0;
            } else {
              js["kind"] = "spline";
              js["closed"] = seg.closed;
              js["controls"] = json::array();
              for (const cplx& c : seg.ctrl) js["controls"].push_back(point_to_json(c));
            }
          },
          s);
      jb["segments"].push_back(std::move(js));
    }
    doc["boundaries"].push_back(std::move(jb));
  }
  doc["origin"] = point_to_json(spec.origin);
  if (spec.z1) doc["z1"] = point_to_json(*spec.z1);
  doc["params"] = {{"p", spec.grading_p}, {"n", spec.samples_per_boundary}};
  return doc.dump(2);
}

// ---------------------------------------------------------------------------
// Artifact writers
// ---------------------------------------------------------------------------

std::string report_to_json(const PathReport& r) {
  json doc;
  doc["case"] = r.kind == CaseKind::CaseI ? "I" : "II";
  doc["m"] = r.m;
  doc["n"] = r.n;
  doc["nhat"] = r.nhat;
  doc["k"] = r.k;
  doc["C"] = r.C;
  doc["eps"] = r.eps;
  doc["theta0"] = r.theta0;
  doc["map_radii"] = r.radii;
  doc["iso_radii"] = r.iso_radii;
  doc["certified_gap_mic"] = r.gap_mic;
  doc["residual_mic"] = r.residual_mic;
  doc["path_length"] = r.length;
  doc["coverage_fraction"] = r.coverage;
  doc["uncovered_fraction"] = r.uncovered_fraction;
  doc["turning"] = {{"max_angle_deg", r.turning.max_angle_deg},
                    {"count_above_threshold", r.turning.count_above},
                    {"max_curvature", r.turning.max_curvature},
                    {"mean_curvature", r.turning.mean_curvature}};
  doc["spacing"] = {{"max_gap", r.spacing.max_gap},
                    {"mean_gap", r.spacing.mean_gap},
                    {"samples", r.spacing.samples},
                    {"skipped_across_holes", r.spacing.skipped_across_holes}};
  doc["circularity_spread"] = r.circ_spread;
  doc["str"] = r.str;
  doc["spacing_control_seconds"] = r.spacing_control_seconds;
  doc["degenerate_plan"] = r.degenerate_plan;
  doc["trim"] = {{"head", r.trim_head}, {"tail", r.trim_tail}};
  return doc.dump(2);
}

std::string path_to_json(const SpiralPath& path, const PathReport& r) {
  json doc;
  doc["case"] = r.kind == CaseKind::CaseI ? "I" : "II";
  doc["theta0"] = path.theta0;
  doc["k"] = r.k;
  doc["iso_radii"] = r.iso_radii;
  doc["map_radii"] = r.radii;
  doc["trim"] = {{"head", path.trim_head}, {"tail", path.trim_tail}};
  doc["path"] = json::array();
  for (const cplx& p : path.fused) doc["path"].push_back(point_to_json(p));
  return doc.dump();
}

std::string path_to_csv(std::span<const cplx> path) {
  std::string out = "x,y\n";
  char buf[80];
  for (const cplx& p : path) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.real(), p.imag());
    out += buf;
  }
  return out;
}

std::vector<cplx> path_from_json(const std::string& text) {
  json doc = json::parse(text);
  std::vector<cplx> out;
  for (const auto& p : doc.at("path")) out.push_back(read_point(p, "path vertex"));
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + p.string());
  out << content;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config) {
  PipelineResult result;
  try {
    ParsedDomain parsed = load_domain(config.input);
    if (!parsed.errors.empty()) {
      std::string msg = "validation failed:";
      for (const auto& e : parsed.errors) msg += "\n  " + e;
      result.exit_code = 2;
      result.message = msg;
      return result;
    }
    DomainSpec spec = parsed.spec;
    spec.grading_p = config.p;
    spec.samples_per_boundary = config.n;
    if (config.C <= 0) {
      result.exit_code = 2;
      result.message = "tool radius C must be positive";
      return result;
    }

    ClassifyResult cls = classify_case(spec);
    if (config.case_override == "I") cls.kind = CaseKind::CaseI;
    if (config.case_override == "II" && cls.kind != CaseKind::CaseII) {
      result.exit_code = 2;
      result.message = "case II requested but the material centroid is not inside a hole";
      return result;
    }
    spec = normalize_for_case(spec, cls);
    const MapKind kind = cls.kind == CaseKind::CaseI ? MapKind::Disc : MapKind::Annular;

    DiscretizedBoundary db = parameterize_domain(spec);
    MappingSolution sol = solve_slitmap(db, kind, spec.origin, spec.z1);

    const auto t0 = std::chrono::steady_clock::now();
    IsoContext ctx = make_iso_context(sol, config.nhat, config.C);
    IsoParamFamily family = spacing_control(ctx, config.C, config.eps);
    const auto t1 = std::chrono::steady_clock::now();
    const double spacing_seconds = std::chrono::duration<double>(t1 - t0).count();

    PathReport rep;
    rep.kind = cls.kind;
    rep.m = static_cast<int>(spec.boundaries.size()) - 1;
    rep.n = config.n;
    rep.nhat = config.nhat;
    rep.k = family.k();
    rep.C = config.C;
    rep.eps = config.eps;
    rep.radii = sol.radii;
    rep.iso_radii = family.radii;
    rep.gap_mic = family.gap_mic;
    rep.residual_mic = family.residual_mic;
    rep.circ_spread = sol.circ_spread;
    rep.spacing_control_seconds = spacing_seconds;
    if (rep.k > 0)
      rep.str = str_ratio(rep.m, rep.n, rep.nhat, rep.k, rep.eps,
                          std::max(spacing_seconds, 1e-9));

    std::vector<Polyline> loops;
    for (int j = 0; j < sol.nb; ++j) loops.push_back(sol.boundary_curve(j));

    SpiralPath path;
    if (family.k() == 0) {
      // Degenerate plan: the boundary loops alone already cover the material.
      rep.degenerate_plan = true;
      path.preimage = loops[0];
      path.preimage.push_back(loops[0].front());
      path.fused = path.preimage;
      std::vector<Polyline> hole_loops(loops.begin() + 1, loops.end());
      if (!hole_loops.empty()) fuse_boundaries(path, hole_loops, config.C);
    } else {
      std::vector<SlitArcSpec> slits;
      for (const auto& s : sol.slits) slits.push_back({s.radius, s.alpha, s.extent});
      Theta0Choice choice;
      if (config.theta0_policy == "auto") {
        choice = avoid_slits(family.radii, sol.inner_radius(), slits, 360,
                             config.samples_per_turn);
      } else {
        choice.theta0 = config.theta0_fixed;
        const auto probe = interpolate_ladder(
            build_ladder(family.radii, sol.inner_radius(), choice.theta0),
            config.samples_per_turn);
        choice.intersections = count_slit_intersections(probe, slits);
        if (choice.intersections > 0)
          throw PlanningError("fixed theta0 intersects slit images", choice.theta0,
                              slit_clearance(probe, slits), choice.intersections);
      }
      rep.theta0 = choice.theta0;
      const auto sc = interpolate_ladder(
          build_ladder(family.radii, sol.inner_radius(), choice.theta0),
          config.samples_per_turn);
      path = to_polar_and_pullback(sc, sol);
      if (config.direction == "outward") {
        std::reverse(path.preimage.begin(), path.preimage.end());
        std::reverse(path.preimage_theta.begin(), path.preimage_theta.end());
        path.fused = path.preimage;
      }
      fuse_boundaries(path, loops, config.C);
      const double resolution = config.resolution > 0 ? config.resolution : config.C / 20.0;
      trim_ends(path, loops, config.C, resolution);
    }

    const double resolution = config.resolution > 0 ? config.resolution : config.C / 20.0;
    rep.length = path_length(path.fused);
    rep.coverage = coverage_fraction(path.fused, loops, config.C, resolution);
    rep.uncovered_fraction = 1.0 - rep.coverage;
    rep.turning = turning_stats(path.fused, 30.0);
    if (path.preimage.size() == path.preimage_theta.size() && path.preimage.size() > 2) {
      std::vector<Polyline> hole_loops(loops.begin() + 1, loops.end());
      rep.spacing = spiral_spacing(path.preimage, path.preimage_theta, hole_loops, 500,
                                   config.seed);
    }
    rep.trim_head = path.trim_head;
    rep.trim_tail = path.trim_tail;

    std::filesystem::create_directories(config.output_dir);
    auto has_format = [&](const std::string& f) {
      return std::find(config.formats.begin(), config.formats.end(), f) !=
             config.formats.end();
    };
    if (has_format("json")) {
      write_file(config.output_dir / "path.json", path_to_json(path, rep));
      write_file(config.output_dir / "report.json", report_to_json(rep));
    }
    if (has_format("csv")) write_file(config.output_dir / "path.csv", path_to_csv(path.fused));
    if (has_format("svg"))
      write_file(config.output_dir / "plot.svg", render_svg(spec, &sol, &family, &path));

    result.report = rep;
    result.message = "ok";
    return result;
  } catch (const PlanningError& e) {
    result.exit_code = 3;
    result.message = std::string("planning failure: ") + e.what();
    return result;
  } catch (const NumericalError& e) {
    result.exit_code = 4;
    result.message = std::string("numerical failure: ") + e.what();
    return result;
  } catch (const AccuracyError& e) {
    result.exit_code = 4;
    result.message = std::string("numerical failure: ") + e.what();
    return result;
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.message = std::string("validation failure: ") + e.what();
    return result;
  }
}

}  // namespace csm
