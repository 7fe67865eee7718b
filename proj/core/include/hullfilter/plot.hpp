#pragma once

#include <string>
#include <vector>

namespace hullfilter {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

struct PlotSpec {
  std::string title, xlabel, ylabel;
  bool log_x = false;
  bool log_y = false;
};

// Minimal static SVG line chart, one polyline per series.
void write_svg_plot(const std::vector<PlotSeries>& series, const PlotSpec& spec,
                    const std::string& path);

}  // namespace hullfilter
