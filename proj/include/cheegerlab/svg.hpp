#pragma once

// Deterministic vector rendering of domain specs (circles, slit segments,
// bump outlines as exact circular arcs) and solver-indicator contour
// overlays.  Output depends only on the inputs: fixed number formatting, no
// timestamps.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cheegerlab/cantor.hpp"
#include "cheegerlab/domain.hpp"
#include "cheegerlab/errors.hpp"
#include "cheegerlab/geometry.hpp"
#include "cheegerlab/raster.hpp"

namespace cheegerlab {

struct RenderOptions {
  Point2 center{0.0, 0.0};  // window center in plane coordinates
  double half = 1.15;       // window half-width
  int size = 900;           // output size in CSS pixels
};

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::string(buf);
}

// Plane coordinates map to SVG with the y axis flipped.
inline std::string svg_point(Point2 p) {
  return fmt(p.x) + " " + fmt(-p.y);
}

class SvgBuilder {
 public:
  explicit SvgBuilder(const RenderOptions& opt) : opt_(opt) {
    body_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
          << opt.size << "\" height=\"" << opt.size << "\" viewBox=\""
          << fmt(opt.center.x - opt.half) << " "
          << fmt(-(opt.center.y + opt.half)) << " " << fmt(2 * opt.half)
          << " " << fmt(2 * opt.half) << "\">\n";
    body_ << "<rect x=\"" << fmt(opt.center.x - opt.half) << "\" y=\""
          << fmt(-(opt.center.y + opt.half)) << "\" width=\""
          << fmt(2 * opt.half) << "\" height=\"" << fmt(2 * opt.half)
          << "\" fill=\"white\"/>\n";
  }

  double hairline() const { return 0.003 * opt_.half; }
  double feature_limit() const { return 5e-4 * opt_.half; }

  void comment(const std::string& text) {
    body_ << "<!-- " << text << " -->\n";
  }

  void circle(Point2 c, double r, const std::string& fill,
              const std::string& stroke) {
    body_ << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(-c.y)
          << "\" r=\"" << fmt(r) << "\" fill=\"" << fill << "\" stroke=\""
          << stroke << "\" stroke-width=\"" << fmt(hairline()) << "\"/>\n";
  }

  void line(Point2 a, Point2 b, const std::string& stroke, double width) {
    body_ << "<line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(-a.y)
          << "\" x2=\"" << fmt(b.x) << "\" y2=\"" << fmt(-b.y)
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(width)
          << "\"/>\n";
  }

  void raw(const std::string& s) { body_ << s; }

  std::string finish() {
    body_ << "</svg>\n";
    return body_.str();
  }

 private:
  RenderOptions opt_;
  std::ostringstream body_;
};

// Closed outline of one bump over the gap at `mid` with half-width `delta`:
// four unit-radius arcs traversed counter-clockwise in plane coordinates
// (sweep flag 0 after the y flip).
inline std::string bump_path(double mid, double delta,
                             const std::string& fill) {
  const double peak = bump_height(delta);
  const Point2 a{mid - delta, 0.0};
  const Point2 top{mid, peak};
  const Point2 d{mid + delta, 0.0};
  const Point2 bottom{mid, -peak};
  std::string s = "<path d=\"M " + svg_point(a);
  const auto arc_to = [&](Point2 to) {
    s += " A 1 1 0 0 0 " + svg_point(to);
  };
  arc_to(top);
  arc_to(d);
  arc_to(bottom);
  arc_to(a);
  s += " Z\" fill=\"" + fill + "\" stroke=\"none\"/>\n";
  return s;
}

}  // namespace detail

inline std::string render_domain_svg(const DomainSpec& spec,
                                     const RenderOptions& opt = {}) {
  detail::SvgBuilder svg(opt);
  const double limit = svg.feature_limit();
  svg.circle(spec.outer.center, spec.outer.radius, "#eef3f7", "#1b3a57");
  if (spec.kind == ObstacleKind::holes) {
    int skipped = 0;
    for (const auto& hole : spec.holes) {
      if (hole.radius < limit) {
        ++skipped;
        continue;
      }
      svg.circle(hole.center, hole.radius, "white", "#8c1d1d");
    }
    if (skipped > 0) {
      svg.comment(std::to_string(skipped) +
                  " holes below the feature limit not drawn");
    }
  } else if (spec.kind == ObstacleKind::cantor_bumps) {
    int skipped = 0;
    for (const auto& gap : spec.cantor.gaps) {
      if (gap.half_length < limit) {
        ++skipped;
        continue;
      }
      svg.raw(detail::bump_path(gap.midpoint, gap.half_length, "white"));
    }
    for (const auto& seg : spec.cantor.segments) {
      if (seg.length() < limit) {
        ++skipped;
        continue;
      }
      svg.line(seg.a, seg.b, "#8c1d1d", svg.hairline());
    }
    if (skipped > 0) {
      svg.comment(std::to_string(skipped) +
                  " slit features below the feature limit not drawn");
    }
  }
  return svg.finish();
}

inline std::string render_overlay_svg(const DomainSpec& spec,
                                      const RasterField& field,
                                      double threshold,
                                      const RenderOptions& opt = {}) {
  detail::SvgBuilder svg(opt);
  svg.circle(spec.outer.center, spec.outer.radius, "none", "#1b3a57");
  const auto segments = contour_segments(field, threshold);
  std::string path = "<path d=\"";
  for (const auto& [a, b] : segments) {
    path += "M " + detail::svg_point(a) + " L " + detail::svg_point(b) + " ";
  }
  path += "\" fill=\"none\" stroke=\"#b35c00\" stroke-width=\"" +
          detail::fmt(svg.hairline()) + "\"/>\n";
  svg.raw(path);
  svg.comment("contour at threshold " + detail::fmt(threshold) + ", " +
              std::to_string(segments.size()) + " segments");
  return svg.finish();
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot open for writing: " + path);
  out << content;
}

}  // namespace cheegerlab
