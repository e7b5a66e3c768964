// Deterministic SVG line charts.  Output depends only on the data and
// labels: fixed canvas, fixed tick policy, fixed number formatting.

#pragma once

#include <span>
#include <string>

namespace isac {

struct LineChartSpec {
    std::string x_label;
    std::string y_label;
    std::string title;
};

// Renders a single polyline chart.  Points with non-finite coordinates
// break the line into separate segments.  Throws std::invalid_argument on
// size mismatch or when no finite point exists.
std::string render_line_chart(std::span<const double> xs, std::span<const double> ys,
                              const LineChartSpec& spec);

}  // namespace isac
