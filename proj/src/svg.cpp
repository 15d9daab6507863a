#include <cstdio>
#include <string>

#include "csm/geometry.hpp"
#include "csm/io.hpp"

namespace csm {

namespace {

// SVG y grows downward; geometry y is emitted negated.
void append_polyline(std::string& out, std::span<const cplx> pts, const char* style,
                     bool closed) {
  if (pts.size() < 2) return;
  out += closed ? "<polygon points=\"" : "<polyline points=\"";
  char buf[64];
  for (const cplx& p : pts) {
    std::snprintf(buf, sizeof(buf), "%.6g,%.6g ", p.real(), -p.imag());
    out += buf;
  }
  out += "\" ";
  out += style;
  out += "/>\n";
}

}  // namespace

std::string render_svg(const DomainSpec& spec, const MappingSolution* sol,
                       const IsoParamFamily* family, const SpiralPath* path) {
  std::vector<Polyline> polys;
  for (const auto& b : spec.boundaries)
    polys.push_back(boundary_polyline(b, spec.grading_p, 512));
  BBox bb = bbox_of(polys);
  const double margin = 0.05 * std::max(bb.width(), bb.height());
  const double inset_w = 0.45 * bb.width();

  char head[256];
  std::snprintf(head, sizeof(head),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.6g %.6g %.6g %.6g\">\n",
                bb.xmin - margin, -(bb.ymax + margin),
                bb.width() + 2 * margin + inset_w + margin, bb.height() + 2 * margin);
  std::string out = head;

  out += "<g id=\"domain\" fill=\"none\">\n";
  for (size_t j = 0; j < polys.size(); ++j)
    append_polyline(out, polys[j],
                    j == 0 ? "stroke=\"#222\" stroke-width=\"0.8%\""
                           : "stroke=\"#222\" stroke-width=\"0.5%\" fill=\"#ddd\"",
                    true);
  out += "</g>\n";

  if (family) {
    out += "<g id=\"isoparams\" fill=\"none\" stroke=\"#8ab\" stroke-width=\"0.25%\">\n";
    for (const auto& curve : family->curves) append_polyline(out, curve, "", true);
    out += "</g>\n";
  }

  if (path && path->fused.size() > 1) {
    out += "<g id=\"fused\" fill=\"none\" stroke=\"#c33\" stroke-width=\"0.35%\">\n";
    append_polyline(out, path->fused, "", false);
    out += "</g>\n";
  }

  // Mapped-domain inset: unit circle, slit arcs, spiral SC*.
  if (sol) {
    const double cx = bb.xmax + margin + inset_w / 2;
    const double cy = bb.ymin + bb.height() / 2;
    const double scale = inset_w / 2.2;
    auto map_pt = [&](cplx w) { return cplx(cx, cy) + scale * w; };
    out += "<g id=\"mapped-inset\" fill=\"none\">\n";
    Polyline circle;
    for (int i = 0; i < 128; ++i) circle.push_back(map_pt(std::polar(1.0, two_pi * i / 128)));
    append_polyline(out, circle, "stroke=\"#222\" stroke-width=\"0.4%\"", true);
    if (sol->kind == MapKind::Annular) {
      Polyline inner;
      for (int i = 0; i < 128; ++i)
        inner.push_back(map_pt(std::polar(sol->radii[1], two_pi * i / 128)));
      append_polyline(out, inner, "stroke=\"#222\" stroke-width=\"0.4%\"", true);
    }
    for (const auto& s : sol->slits) {
      Polyline arc;
      const int steps = std::max(2, static_cast<int>(64 * s.extent / two_pi));
      for (int i = 0; i <= steps; ++i)
        arc.push_back(map_pt(std::polar(s.radius, s.alpha + s.extent * i / steps)));
      append_polyline(out, arc, "stroke=\"#d60\" stroke-width=\"0.8%\"", false);
    }
    if (path && !path->mapped.empty()) {
      Polyline sc;
      for (const cplx& p : path->mapped)
        sc.push_back(map_pt(std::polar(p.imag(), p.real())));
      append_polyline(out, sc, "stroke=\"#36c\" stroke-width=\"0.25%\"", false);
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace csm
