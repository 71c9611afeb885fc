#include "mblab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mblab {

namespace {

constexpr double kW = 640, kH = 480;
constexpr double kL = 70, kR = 20, kT = 40, kB = 50;

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string render_loglog_svg(const LogLogPlot& plot) {
    if (plot.points.size() < 2)
        throw std::invalid_argument("render_loglog_svg: need >= 2 points");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto [x, y] : plot.points) {
        if (x <= 0.0 || y <= 0.0)
            throw std::invalid_argument("render_loglog_svg: nonpositive data");
        xmin = std::min(xmin, std::log10(x));
        xmax = std::max(xmax, std::log10(x));
        ymin = std::min(ymin, std::log10(y));
        ymax = std::max(ymax, std::log10(y));
    }
    if (ymax - ymin < 0.5) {
        const double mid = 0.5 * (ymin + ymax);
        ymin = mid - 0.25;
        ymax = mid + 0.25;
    }
    const double xpad = 0.05 * (xmax - xmin + 1e-12), ypad = 0.08 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;
    auto px = [&](double lx) { return kL + (lx - xmin) / (xmax - xmin) * (kW - kL - kR); };
    auto py = [&](double ly) { return kH - kB - (ly - ymin) / (ymax - ymin) * (kH - kT - kB); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
        << kH << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << plot.title << "</text>\n";

    // axes
    svg << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR
        << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\""
        << kH - kB << "\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(std::ceil(xmin)); e <= std::floor(xmax); ++e) {
        svg << "<line x1=\"" << px(e) << "\" y1=\"" << kH - kB << "\" x2=\"" << px(e)
            << "\" y2=\"" << kH - kB + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px(e) << "\" y=\"" << kH - kB + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">1e" << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ymin)); e <= std::floor(ymax); ++e) {
        svg << "<line x1=\"" << kL - 5 << "\" y1=\"" << py(e) << "\" x2=\"" << kL
            << "\" y2=\"" << py(e) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kL - 8 << "\" y=\"" << py(e) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">1e" << e << "</text>\n";
    }
    svg << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 10
        << "\" text-anchor=\"middle\" font-size=\"12\">" << plot.x_label << "</text>\n"
        << "<text x=\"16\" y=\"" << (kT + kH - kB) / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
        << (kT + kH - kB) / 2 << ")\">" << plot.y_label << "</text>\n";

    // fitted line (slope/intercept are natural-log based: ln y = a + m ln x)
    const double ln10 = std::log(10.0);
    auto fit_ly = [&](double lx) {
        return (plot.fit_intercept + plot.fit_slope * lx * ln10) / ln10;
    };
    svg << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(fit_ly(xmin)) << "\" x2=\""
        << px(xmax) << "\" y2=\"" << py(fit_ly(xmax))
        << "\" stroke=\"#1b6ca8\" stroke-width=\"1.2\"/>\n";
    if (plot.has_reference) {
        const double lx0 = std::log10(plot.points.front().first);
        const double ly0 = std::log10(plot.points.front().second);
        auto ref_ly = [&](double lx) { return ly0 + plot.reference_slope * (lx - lx0); };
        svg << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(ref_ly(xmin)) << "\" x2=\""
            << px(xmax) << "\" y2=\"" << py(ref_ly(xmax))
            << "\" stroke=\"#c0392b\" stroke-dasharray=\"6 4\"/>\n";
        svg << "<text x=\"" << kW - kR - 4 << "\" y=\"" << kT + 14
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#c0392b\">reference slope "
            << num(plot.reference_slope) << "</text>\n";
    }
    svg << "<text x=\"" << kW - kR - 4 << "\" y=\"" << kT
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#1b6ca8\">fit slope "
        << num(plot.fit_slope) << "</text>\n";

    for (auto [x, y] : plot.points)
        svg << "<circle cx=\"" << px(std::log10(x)) << "\" cy=\"" << py(std::log10(y))
            << "\" r=\"3.2\" fill=\"#1b6ca8\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

void write_loglog_svg(const LogLogPlot& plot, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_loglog_svg: cannot open " + path);
    out << render_loglog_svg(plot);
}

}  // namespace mblab
