#include "lexpand/svgplot.hpp"

#include <algorithm>
#include <cstdio>

#include "lexpand/util.hpp"

namespace lexpand {
namespace svgplot {

namespace {

const char* label_class(classifier::Label label) {
  switch (label) {
    case classifier::Label::kA: return "pt-a";
    case classifier::Label::kB: return "pt-b";
    case classifier::Label::kUnclassified: return "pt-u";
  }
  return "pt-u";
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

std::vector<ScatterPoint> maybe_swap(const std::vector<ScatterPoint>& points,
                                     bool swap_axes) {
  if (!swap_axes) return points;
  std::vector<ScatterPoint> swapped = points;
  for (ScatterPoint& p : swapped) std::swap(p.x, p.y);
  return swapped;
}

}  // namespace

std::string render_scatter_svg(const std::vector<ScatterPoint>& points,
                               bool swap_axes,
                               const ScatterGeometry& geometry) {
  std::vector<ScatterPoint> pts = maybe_swap(points, swap_axes);
  const char* x_label = swap_axes ? "bad-set frequency" : "good-set frequency";
  const char* y_label = swap_axes ? "good-set frequency" : "bad-set frequency";

  double x_max = 0.0;
  double y_max = 0.0;
  for (const ScatterPoint& p : pts) {
    x_max = std::max(x_max, p.x);
    y_max = std::max(y_max, p.y);
  }
  if (x_max <= 0.0) x_max = 1.0;
  if (y_max <= 0.0) y_max = 1.0;

  const double plot_w =
      geometry.width - geometry.margin_left - geometry.margin_right;
  const double plot_h =
      geometry.height - geometry.margin_top - geometry.margin_bottom;
  const double x0 = geometry.margin_left;
  const double y0 = geometry.height - geometry.margin_bottom;  // data origin

  auto sx = [&](double x) { return x0 + x / x_max * plot_w; };
  auto sy = [&](double y) { return y0 - y / y_max * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(geometry.width) + "\" height=\"" +
         std::to_string(geometry.height) + "\" viewBox=\"0 0 " +
         std::to_string(geometry.width) + " " + std::to_string(geometry.height) +
         "\">\n";
  svg +=
      "  <style>\n"
      "    .pt-a { fill: #2a7de1; }\n"
      "    .pt-b { fill: #d4452c; }\n"
      "    .pt-u { fill: #8a8a8a; }\n"
      "    .axis { stroke: #333; stroke-width: 1; }\n"
      "    .tick { stroke: #333; stroke-width: 1; }\n"
      "    text { font-family: sans-serif; font-size: 12px; fill: #333; }\n"
      "  </style>\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  svg += "  <line class=\"axis\" x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) +
         "\" x2=\"" + fmt(x0 + plot_w) + "\" y2=\"" + fmt(y0) + "\"/>\n";
  svg += "  <line class=\"axis\" x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) +
         "\" x2=\"" + fmt(x0) + "\" y2=\"" + fmt(y0 - plot_h) + "\"/>\n";

  // Five ticks per axis (0 .. max).
  for (int t = 0; t <= 4; ++t) {
    double fx = x_max * t / 4.0;
    double fy = y_max * t / 4.0;
    double px = sx(fx);
    double py = sy(fy);
    svg += "  <line class=\"tick\" x1=\"" + fmt(px) + "\" y1=\"" + fmt(y0) +
           "\" x2=\"" + fmt(px) + "\" y2=\"" + fmt(y0 + 5) + "\"/>\n";
    svg += "  <text x=\"" + fmt(px) + "\" y=\"" + fmt(y0 + 20) +
           "\" text-anchor=\"middle\">" + util::format_real(fx) + "</text>\n";
    svg += "  <line class=\"tick\" x1=\"" + fmt(x0 - 5) + "\" y1=\"" + fmt(py) +
           "\" x2=\"" + fmt(x0) + "\" y2=\"" + fmt(py) + "\"/>\n";
    svg += "  <text x=\"" + fmt(x0 - 9) + "\" y=\"" + fmt(py + 4) +
           "\" text-anchor=\"end\">" + util::format_real(fy) + "</text>\n";
  }

  // Axis titles.
  svg += "  <text x=\"" + fmt(x0 + plot_w / 2) + "\" y=\"" +
         fmt(static_cast<double>(geometry.height) - 12) +
         "\" text-anchor=\"middle\">" + std::string(x_label) + "</text>\n";
  svg += "  <text x=\"18\" y=\"" + fmt(y0 - plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fmt(y0 - plot_h / 2) + ")\">" + std::string(y_label) + "</text>\n";

  for (const ScatterPoint& p : pts) {
    svg += "  <circle class=\"" + std::string(label_class(p.label)) +
           "\" cx=\"" + fmt(sx(p.x)) + "\" cy=\"" + fmt(sy(p.y)) +
           "\" r=\"4\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string scatter_csv(const std::vector<ScatterPoint>& points,
                        bool swap_axes) {
  std::vector<ScatterPoint> pts = maybe_swap(points, swap_axes);
  std::string out = "x,y,label\n";
  for (const ScatterPoint& p : pts) {
    out += util::format_real(p.x);
    out.push_back(',');
    out += util::format_real(p.y);
    out.push_back(',');
    out += classifier::to_string(p.label);
    out.push_back('\n');
  }
  return out;
}

}  // namespace svgplot
}  // namespace lexpand
