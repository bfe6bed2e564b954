#pragma once

#include <array>
#include <string>
#include <vector>

namespace igsmac {

/// Minimal SVG line plot: axes, ticks, polylines and a text legend.  CSV is
/// the canonical output; this exists so sweeps can be eyeballed without any
/// plotting dependency.
struct SvgSeries {
  std::string label;
  std::string color = "#000000";
  std::vector<std::array<double, 2>> points;
};

std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<SvgSeries>& series);

}  // namespace igsmac
