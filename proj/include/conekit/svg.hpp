#pragma once

#include <string>
#include <vector>

namespace conekit {

struct SvgSeries {
    std::string label;
    std::string color = "#1f6fb2";
    std::vector<double> x, y;
};

/// Data-faithful log-log or linear line chart.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, bool log_x = true, bool log_y = true,
                    int width = 640, int height = 420);

}  // namespace conekit
