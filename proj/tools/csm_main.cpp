// Command-line front end: plan (full pipeline), map (solver only),
// mic (inscribed-circle query), metrics (re-score an existing path).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "csm/geometry.hpp"
#include "csm/io.hpp"
#include "json.hpp"

namespace {

using namespace csm;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const PlanningError*>(&e)) return 3;
  if (dynamic_cast<const NumericalError*>(&e)) return 4;
  if (dynamic_cast<const AccuracyError*>(&e)) return 4;
  return 2;
}

DomainSpec load_or_exit(const std::filesystem::path& file, int n, int p) {
  ParsedDomain parsed = load_domain(file);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
  if (!parsed.errors.empty()) {
    for (const auto& e : parsed.errors) std::cerr << "error: " << e << "\n";
    std::exit(2);
  }
  parsed.spec.samples_per_boundary = n;
  parsed.spec.grading_p = p;
  return parsed.spec;
}

int cmd_plan(const RunConfig& config) {
  PipelineResult res = run_pipeline(config);
  if (res.exit_code == 0) {
    std::cout << "plan: k=" << res.report.k << " coverage=" << res.report.coverage
              << " length=" << res.report.length
              << (res.report.degenerate_plan ? " (degenerate: boundary-only path)" : "")
              << "\n artifacts in " << config.output_dir.string() << "\n";
  } else {
    std::cerr << res.message << "\n";
  }
  return res.exit_code;
}

int cmd_map(const std::filesystem::path& input, const std::string& case_override, int n,
            int p, const std::filesystem::path& outdir) {
  DomainSpec spec = load_or_exit(input, n, p);
  ClassifyResult cls = classify_case(spec);
  if (case_override == "I") cls.kind = CaseKind::CaseI;
  spec = normalize_for_case(spec, cls);
  const MapKind kind = cls.kind == CaseKind::CaseI ? MapKind::Disc : MapKind::Annular;
  MappingSolution sol = solve_slitmap(parameterize_domain(spec), kind, spec.origin, spec.z1);

  nlohmann::ordered_json doc;
  doc["case"] = cls.kind == CaseKind::CaseI ? "I" : "II";
  doc["radii"] = sol.radii;
  doc["normalization_c"] = sol.c;
  doc["circularity_spread"] = sol.circ_spread;
  doc["circularity_stddev"] = sol.circ_std;
  doc["h_deviation"] = sol.h_dev;
  doc["slits"] = nlohmann::ordered_json::array();
  for (const auto& s : sol.slits)
    doc["slits"].push_back({{"boundary", s.boundary},
                            {"radius", s.radius},
                            {"alpha", s.alpha},
                            {"extent", s.extent}});
  std::filesystem::create_directories(outdir);
  std::ofstream(outdir / "map.json") << doc.dump(2) << "\n";
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_mic(const std::filesystem::path& input, int n, int p) {
  DomainSpec spec = load_or_exit(input, n, p);
  std::vector<Polyline> region;
  for (const auto& b : spec.boundaries) region.push_back(boundary_polyline(b, p, n));
  InscribedCircle mic = max_inscribed_circle(region);
  nlohmann::ordered_json doc;
  doc["center"] = {mic.center.real(), mic.center.imag()};
  doc["radius"] = mic.radius;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_metrics(const std::filesystem::path& path_file, const std::filesystem::path& domain_file,
                double C, double resolution, int n, int p) {
  std::ifstream in(path_file);
  if (!in) {
    std::cerr << "error: cannot open " << path_file << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  std::vector<cplx> path = path_from_json(ss.str());
  DomainSpec spec = load_or_exit(domain_file, n, p);
  std::vector<Polyline> region;
  for (const auto& b : spec.boundaries) region.push_back(boundary_polyline(b, p, n));
  const double res = resolution > 0 ? resolution : C / 20.0;

  nlohmann::ordered_json doc;
  doc["path_length"] = path_length(path);
  doc["coverage_fraction"] = coverage_fraction(path, region, C, res);
  const TurningStats ts = turning_stats(path, 30.0);
  doc["turning"] = {{"max_angle_deg", ts.max_angle_deg},
                    {"count_above_threshold", ts.count_above},
                    {"max_curvature", ts.max_curvature},
                    {"mean_curvature", ts.mean_curvature}};
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spiral complete-coverage path planning via conformal slit mapping"};
  app.require_subcommand(1);

  RunConfig config;
  if (const char* env = std::getenv("CSM_OUTPUT_DIR")) config.output_dir = env;

  auto* plan = app.add_subcommand("plan", "Run the full planning pipeline");
  plan->add_option("input", config.input, "Domain JSON document")->required();
  plan->add_option("-o,--output", config.output_dir, "Output directory");
  plan->add_option("--case", config.case_override, "auto | I | II")
      ->check(CLI::IsMember({"auto", "I", "II"}));
  plan->add_option("-n,--samples", config.n, "Samples per boundary (even)");
  plan->add_option("--nhat", config.nhat, "Points per iso-parameter curve");
  plan->add_option("-p,--grading", config.p, "Corner grading parameter (>= 2)");
  plan->add_option("-C,--tool-radius", config.C, "Spacing constant / tool radius")->required();
  plan->add_option("--eps", config.eps, "Spacing certification tolerance");
  std::string theta0 = "auto";
  plan->add_option("--theta0", theta0, "auto or a fixed angle in (-pi, pi]");
  plan->add_option("--samples-per-turn", config.samples_per_turn, "Spiral sampling density");
  plan->add_option("--resolution", config.resolution, "Raster resolution (default C/20)");
  plan->add_option("--direction", config.direction, "outward | inward")
      ->check(CLI::IsMember({"outward", "inward"}));
  plan->add_option("--formats", config.formats, "Artifacts: json csv svg");
  plan->add_option("--seed", config.seed, "Seed for report probe sampling");
  plan->add_flag("-v,--verbose", config.verbosity, "Verbose output");

  std::filesystem::path in_file, domain_file;
  std::string map_case = "auto";
  int n = 1024, p = 3;
  double C = 0, resolution = 0;

  auto* mapc = app.add_subcommand("map", "Solve the slit mapping and report radii");
  mapc->add_option("input", in_file, "Domain JSON document")->required();
  mapc->add_option("--case", map_case, "auto | I | II");
  mapc->add_option("-n,--samples", n, "Samples per boundary");
  mapc->add_option("-p,--grading", p, "Grading parameter");
  mapc->add_option("-o,--output", config.output_dir, "Output directory");

  auto* micc = app.add_subcommand("mic", "Maximum inscribed circle of the domain");
  micc->add_option("input", in_file, "Domain JSON document")->required();
  micc->add_option("-n,--samples", n, "Samples per boundary");
  micc->add_option("-p,--grading", p, "Grading parameter");

  auto* met = app.add_subcommand("metrics", "Re-score an existing path document");
  met->add_option("path", in_file, "Path JSON document")->required();
  met->add_option("--domain", domain_file, "Domain JSON document")->required();
  met->add_option("-C,--tool-radius", C, "Tool radius")->required();
  met->add_option("--resolution", resolution, "Raster resolution (default C/20)");
  met->add_option("-n,--samples", n, "Samples per boundary");
  met->add_option("-p,--grading", p, "Grading parameter");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) {
      if (theta0 != "auto") {
        config.theta0_policy = "fixed";
        config.theta0_fixed = std::stod(theta0);
      }
      return cmd_plan(config);
    }
    if (mapc->parsed()) return cmd_map(in_file, map_case, n, p, config.output_dir);
    if (micc->parsed()) return cmd_mic(in_file, n, p);
    if (met->parsed()) return cmd_metrics(in_file, domain_file, C, resolution, n, p);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
