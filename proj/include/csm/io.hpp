#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "csm/boundary.hpp"
#include "csm/isoparam.hpp"
#include "csm/metrics.hpp"
#include "csm/slitmap.hpp"
#include "csm/spiral.hpp"

namespace csm {

struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path output_dir = "out";
  std::string case_override = "auto";  // auto | I | II
  int n = 1024;
  int nhat = 1000;
  int p = 3;
  double C = 0.0;          // tool radius; required for plan
  double eps = 0.01;
  std::string theta0_policy = "auto";  // auto or a fixed angle
  double theta0_fixed = 0.0;
  int samples_per_turn = 256;
  double resolution = 0.0;  // raster resolution; 0 -> C/20
  std::string direction = "outward";   // outward (inside-to-outside) | inward
  std::vector<std::string> formats = {"json", "csv", "svg"};
  uint64_t seed = 12345;
  int verbosity = 0;
};

struct ParsedDomain {
  DomainSpec spec;
  std::vector<std::string> errors;    // all violations, not fail-fast
  std::vector<std::string> warnings;  // e.g. auto-reversed orientations
};

/// Parses and validates the JSON domain document (closure, orientation with
/// auto-fix, disjointness, origin/Z1 placement). Errors are collected.
ParsedDomain parse_domain_json(const std::string& text);
ParsedDomain load_domain(const std::filesystem::path& file);

std::string domain_to_json(const DomainSpec& spec);

struct PathReport {
  CaseKind kind = CaseKind::CaseI;
  int m = 0;
  int n = 0;
  int nhat = 0;
  int k = 0;
  double C = 0.0;
  double eps = 0.0;
  double theta0 = 0.0;
  std::vector<double> radii;       // mapped boundary radii R_j
  std::vector<double> iso_radii;   // R_C1..R_Ck
  std::vector<double> gap_mic;
  double residual_mic = 0.0;
  double length = 0.0;
  double coverage = 0.0;
  double uncovered_fraction = 1.0;
  TurningStats turning;
  SpacingStats spacing;
  std::vector<double> circ_spread;
  double str = 0.0;
  double spacing_control_seconds = 0.0;
  bool degenerate_plan = false;    // k == 0, boundary-only path
  size_t trim_head = 0, trim_tail = 0;
};

std::string report_to_json(const PathReport& r);

/// Deterministic path document: vertices plus plan provenance. Identical
/// configs produce byte-identical output.
std::string path_to_json(const SpiralPath& path, const PathReport& r);
std::string path_to_csv(std::span<const cplx> path);
std::vector<cplx> path_from_json(const std::string& text);

/// Layered SVG: domain, iso-parameters, fused path, mapped-domain inset.
std::string render_svg(const DomainSpec& spec, const MappingSolution* sol,
                       const IsoParamFamily* family, const SpiralPath* path);

struct PipelineResult {
  int exit_code = 0;
  std::string message;
  PathReport report;
};

/// plan subcommand body: full pipeline, artifacts written into
/// config.output_dir. Exit codes: 0 success, 2 validation, 3 planning
/// failure, 4 numerical failure.
PipelineResult run_pipeline(const RunConfig& config);

}  // namespace csm
