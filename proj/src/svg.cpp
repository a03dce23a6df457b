#include "fundsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fundsim {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

std::string tick_label(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.4g", value);
    return buffer;
}

std::string escape_text(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_line_chart(const LineChart& chart, int width, int height) {
    if (width < 200 || height < 150) {
        throw std::invalid_argument("chart canvas too small");
    }
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    bool any = false;
    for (const auto& series : chart.series) {
        for (const auto& [x, y] : series.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!any) {
                x_min = x_max = x;
                y_min = y_max = y;
                any = true;
            } else {
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    }
    if (!any) {
        throw std::invalid_argument("chart has no finite points");
    }
    if (x_max == x_min) {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if (y_max == y_min) {
        y_min -= 1.0;
        y_max += 1.0;
    }
    double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double left = 70.0, right = width - 20.0;
    const double top = 40.0, bottom = height - 50.0;
    auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
    auto sy = [&](double y) { return bottom - (y - y_min) / (y_max - y_min) * (bottom - top); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num((left + right) / 2) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           escape_text(chart.title) + "</text>\n";

    // Axes with five ticks per side.
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(right) +
           "\" y2=\"" + num(bottom) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) +
           "\" y2=\"" + num(bottom) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double fx = x_min + (x_max - x_min) * i / 4.0;
        double fy = y_min + (y_max - y_min) * i / 4.0;
        out += "<line x1=\"" + num(sx(fx)) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(sx(fx)) +
               "\" y2=\"" + num(bottom + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(sx(fx)) + "\" y=\"" + num(bottom + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(fx) + "</text>\n";
        out += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(sy(fy)) + "\" x2=\"" + num(left) +
               "\" y2=\"" + num(sy(fy)) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(left - 8) + "\" y=\"" + num(sy(fy) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(fy) + "</text>\n";
    }
    out += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(height - 12.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_text(chart.x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + num((top + bottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           num((top + bottom) / 2) + ")\">" + escape_text(chart.y_label) + "</text>\n";

    for (std::size_t s = 0; s < chart.series.size(); ++s) {
        const auto& series = chart.series[s];
        const char* color = kPalette[s % std::size(kPalette)];
        std::string points;
        for (const auto& [x, y] : series.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!points.empty()) points += ' ';
            points += num(sx(x)) + "," + num(sy(y));
        }
        if (points.empty()) continue;
        out += "<polyline fill=\"none\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";

        double ly = top + 16.0 * static_cast<double>(s);
        out += "<line x1=\"" + num(right - 130) + "\" y1=\"" + num(ly) + "\" x2=\"" +
               num(right - 110) + "\" y2=\"" + num(ly) + "\" stroke=\"";
        out += color;
        out += "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(right - 104) + "\" y=\"" + num(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_text(series.label) +
               "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace fundsim
