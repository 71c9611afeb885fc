// svg.hpp — minimal hand-rolled log-log line chart: one data series plus a
// reference line of prescribed slope. Output is a pure function of the data.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mblab {

struct LogLogPlot {
    std::string title;
    std::string x_label = "N";
    std::string y_label = "norm";
    std::vector<std::pair<double, double>> points;  // positive coordinates
    double fit_slope = 0.0;
    double fit_intercept = 0.0;   // natural-log intercept
    double reference_slope = 0.0; // drawn through the first data point
    bool has_reference = false;
};

std::string render_loglog_svg(const LogLogPlot& plot);
void write_loglog_svg(const LogLogPlot& plot, const std::string& path);

}  // namespace mblab
