#include "hullfilter/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hullfilter {

namespace {

constexpr double kW = 860, kH = 540;
constexpr double kL = 90, kR = 200, kT = 50, kB = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_svg_plot(const std::vector<PlotSeries>& series, const PlotSpec& spec,
                    const std::string& path) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto tx = [&](double v) { return spec.log_x ? std::log2(v) : v; };
  auto ty = [&](double v) { return spec.log_y ? std::log2(v) : v; };
  for (const PlotSeries& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  if (xmin > xmax) throw std::runtime_error("plot: no data");
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

  auto px = [&](double v) { return kL + (tx(v) - xmin) / (xmax - xmin) * (kW - kL - kR); };
  auto py = [&](double v) { return kH - kB - (ty(v) - ymin) / (ymax - ymin) * (kH - kT - kB); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("plot: cannot open " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH
      << "' font-family='sans-serif' font-size='13'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << kW / 2 << "' y='24' text-anchor='middle' font-size='16'>"
      << spec.title << "</text>\n";

  // Axes and ticks.
  out << "<line x1='" << kL << "' y1='" << kH - kB << "' x2='" << kW - kR << "' y2='"
      << kH - kB << "' stroke='black'/>\n"
      << "<line x1='" << kL << "' y1='" << kT << "' x2='" << kL << "' y2='" << kH - kB
      << "' stroke='black'/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 5.0;
    const double fy = ymin + (ymax - ymin) * t / 5.0;
    const double sx = kL + (kW - kL - kR) * t / 5.0;
    const double sy = kH - kB - (kH - kT - kB) * t / 5.0;
    const double vx = spec.log_x ? std::exp2(fx) : fx;
    const double vy = spec.log_y ? std::exp2(fy) : fy;
    out << "<line x1='" << sx << "' y1='" << kH - kB << "' x2='" << sx << "' y2='"
        << kH - kB + 5 << "' stroke='black'/>\n"
        << "<text x='" << sx << "' y='" << kH - kB + 20 << "' text-anchor='middle'>"
        << fmt(vx) << "</text>\n"
        << "<line x1='" << kL - 5 << "' y1='" << sy << "' x2='" << kL << "' y2='" << sy
        << "' stroke='black'/>\n"
        << "<text x='" << kL - 8 << "' y='" << sy + 4 << "' text-anchor='end'>"
        << fmt(vy) << "</text>\n";
  }
  out << "<text x='" << (kL + kW - kR) / 2 << "' y='" << kH - 18
      << "' text-anchor='middle'>" << spec.xlabel << "</text>\n"
      << "<text x='20' y='" << (kT + kH - kB) / 2
      << "' text-anchor='middle' transform='rotate(-90 20 " << (kT + kH - kB) / 2
      << ")'>" << spec.ylabel << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='";
    for (std::size_t i = 0; i < series[si].x.size(); ++i)
      out << px(series[si].x[i]) << ',' << py(series[si].y[i]) << ' ';
    out << "'/>\n";
    for (std::size_t i = 0; i < series[si].x.size(); ++i)
      out << "<circle cx='" << px(series[si].x[i]) << "' cy='" << py(series[si].y[i])
          << "' r='3' fill='" << color << "'/>\n";
    const double ly = kT + 18 * double(si);
    out << "<line x1='" << kW - kR + 12 << "' y1='" << ly << "' x2='" << kW - kR + 36
        << "' y2='" << ly << "' stroke='" << color << "' stroke-width='2'/>\n"
        << "<text x='" << kW - kR + 42 << "' y='" << ly + 4 << "'>" << series[si].label
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace hullfilter
