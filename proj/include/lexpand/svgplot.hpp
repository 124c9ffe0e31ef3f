// svgplot.hpp -- self-contained SVG scatter plots of polarity points, plus
// the scatter CSV that always accompanies them.

#ifndef LEXPAND_SVGPLOT_HPP
#define LEXPAND_SVGPLOT_HPP

#include <string>
#include <vector>

#include "lexpand/classifier.hpp"

namespace lexpand {
namespace svgplot {

struct ScatterPoint {
  double x = 0.0;  // good-set frequency
  double y = 0.0;  // bad-set frequency
  classifier::Label label = classifier::Label::kUnclassified;
};

// Fixed geometry, exposed so tests can recompute point positions.
struct ScatterGeometry {
  int width = 560;
  int height = 560;
  int margin_left = 70;
  int margin_right = 20;
  int margin_top = 20;
  int margin_bottom = 55;
};

// A complete SVG document: axes labeled "good-set frequency" (x) and
// "bad-set frequency" (y), five ticks per axis, one circle per point with a
// per-label CSS class (pt-a / pt-b / pt-u).  Axes scale linearly from 0 to
// the data maximum (1 when all values are 0).  swap_axes exchanges the two
// coordinates and the axis labels.
std::string render_scatter_svg(const std::vector<ScatterPoint>& points,
                               bool swap_axes = false,
                               const ScatterGeometry& geometry = {});

// Scatter CSV: header `x,y,label`, one row per point in order.
std::string scatter_csv(const std::vector<ScatterPoint>& points,
                        bool swap_axes = false);

}  // namespace svgplot
}  // namespace lexpand

#endif  // LEXPAND_SVGPLOT_HPP
