#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fundsim {

struct ChartSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y), plotted in order
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ChartSeries> series;
};

/// Renders a self-contained SVG line chart (axes, ticks, legend). No external
/// assets; output is deterministic for identical input. Throws
/// std::invalid_argument when no series contains a finite point.
std::string render_line_chart(const LineChart& chart, int width = 800, int height = 480);

}  // namespace fundsim
