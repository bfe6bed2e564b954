#include "igsmac/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace igsmac {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<SvgSeries>& series) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const SvgSeries& s : series) {
    for (const auto& p : s.points) {
      x_min = std::min(x_min, p[0]);
      x_max = std::max(x_max, p[0]);
      y_min = std::min(y_min, p[1]);
      y_max = std::max(y_max, p[1]);
    }
  }
  if (!(x_min < x_max)) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (!(y_min < y_max)) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  y_min = std::min(y_min, 0.0);
  x_min = std::min(x_min, 0.0);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) {
    return kHeight - kMarginBottom - (y - y_min) / (y_max - y_min) * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // Axes and ticks.
  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << sx(x_min) << "\" y1=\"" << sy(y_min) << "\" x2=\"" << sx(x_max)
      << "\" y2=\"" << sy(y_min) << "\"/>\n";
  out << "<line x1=\"" << sx(x_min) << "\" y1=\"" << sy(y_min) << "\" x2=\"" << sx(x_min)
      << "\" y2=\"" << sy(y_max) << "\"/>\n";
  out << "</g>\n";
  const int ticks = 5;
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int i = 0; i <= ticks; ++i) {
    const double xv = x_min + (x_max - x_min) * i / ticks;
    const double yv = y_min + (y_max - y_min) * i / ticks;
    out << "<line x1=\"" << sx(xv) << "\" y1=\"" << sy(y_min) << "\" x2=\"" << sx(xv)
        << "\" y2=\"" << sy(y_min) + 4 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(xv) << "\" y=\"" << sy(y_min) + 18
        << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    out << "<line x1=\"" << sx(x_min) - 4 << "\" y1=\"" << sy(yv) << "\" x2=\"" << sx(x_min)
        << "\" y2=\"" << sy(yv) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(x_min) - 8 << "\" y=\"" << sy(yv) + 4
        << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";
  out << "</g>\n";

  // Series polylines and legend.
  double legend_y = kMarginTop + 8;
  for (const SvgSeries& s : series) {
    if (s.points.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : s.points) out << num(sx(p[0])) << "," << num(sy(p[1])) << " ";
    out << "\"/>\n";
    out << "<line x1=\"" << kWidth - 170 << "\" y1=\"" << legend_y << "\" x2=\""
        << kWidth - 150 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - 144 << "\" y=\"" << legend_y + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace igsmac
