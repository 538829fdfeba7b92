#pragma once

// Static SVG line plots of a charge trajectory. Output is a pure function of
// the inputs so repeated runs produce identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "qbattery/errors.hpp"
#include "qbattery/metrics.hpp"
#include "qbattery/series_io.hpp"

namespace qbattery {

enum class PlotMetric { Ergotropy, Power };

inline const char* to_string(PlotMetric m) { return m == PlotMetric::Ergotropy ? "ergotropy" : "power"; }

struct PlotLabel {
    std::string title;     // e.g. preset name
    std::string subtitle;  // e.g. parameter summary
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string fmt(const char* spec, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace detail

inline std::string svg_plot(const ChargeTimeSeries& series, PlotMetric metric, const PlotLabel& label) {
    const auto& ys = metric == PlotMetric::Ergotropy ? series.ergotropy : series.power;
    if (ys.size() != series.times.size() || ys.empty()) throw DomainError("cannot plot an empty or ragged series");

    constexpr double width = 720, height = 440;
    constexpr double left = 72, right = 24, top = 64, bottom = 56;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    const double x0 = series.times.front();
    double x1 = series.times.back();
    if (!(x1 > x0)) x1 = x0 + 1.0;
    double y0 = std::min(0.0, *std::min_element(ys.begin(), ys.end()));
    double y1 = *std::max_element(ys.begin(), ys.end());
    if (!(y1 - y0 > 1e-12)) y1 = y0 + 1.0;
    y1 += 0.05 * (y1 - y0);

    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * plot_w; };
    auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * plot_h; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"440\" viewBox=\"0 0 720 440\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"440\" fill=\"white\"/>\n";
    s += "<text x=\"360\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         detail::xml_escape(label.title) + "</text>\n";
    s += "<text x=\"360\" y=\"44\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#444\">" +
         detail::xml_escape(label.subtitle) + "</text>\n";

    s += "<g stroke=\"#222\" stroke-width=\"1\" fill=\"none\">\n";
    s += "<rect x=\"" + detail::fmt("%.2f", left) + "\" y=\"" + detail::fmt("%.2f", top) + "\" width=\"" +
         detail::fmt("%.2f", plot_w) + "\" height=\"" + detail::fmt("%.2f", plot_h) + "\"/>\n";
    s += "</g>\n";

    constexpr int ticks = 5;
    s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
    for (int k = 0; k <= ticks; ++k) {
        const double xv = x0 + (x1 - x0) * k / ticks;
        const double yv = y0 + (y1 - y0) * k / ticks;
        const std::string xp = detail::fmt("%.2f", px(xv));
        const std::string yp = detail::fmt("%.2f", py(yv));
        s += "<line x1=\"" + xp + "\" y1=\"" + detail::fmt("%.2f", top + plot_h) + "\" x2=\"" + xp + "\" y2=\"" +
             detail::fmt("%.2f", top + plot_h + 5) + "\" stroke=\"#222\"/>\n";
        s += "<text x=\"" + xp + "\" y=\"" + detail::fmt("%.2f", top + plot_h + 18) + "\" text-anchor=\"middle\">" +
             detail::fmt("%.3g", xv) + "</text>\n";
        s += "<line x1=\"" + detail::fmt("%.2f", left - 5) + "\" y1=\"" + yp + "\" x2=\"" +
             detail::fmt("%.2f", left) + "\" y2=\"" + yp + "\" stroke=\"#222\"/>\n";
        s += "<text x=\"" + detail::fmt("%.2f", left - 8) + "\" y=\"" + detail::fmt("%.2f", py(yv) + 4) +
             "\" text-anchor=\"end\">" + detail::fmt("%.3g", yv) + "</text>\n";
    }
    s += "<text x=\"" + detail::fmt("%.2f", left + plot_w / 2) + "\" y=\"" + detail::fmt("%.2f", height - 12) +
         "\" text-anchor=\"middle\" font-size=\"13\">t</text>\n";
    s += "<text x=\"18\" y=\"" + detail::fmt("%.2f", top + plot_h / 2) + "\" text-anchor=\"middle\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " + detail::fmt("%.2f", top + plot_h / 2) + ")\">" + to_string(metric) +
         "</text>\n";
    s += "</g>\n";

    s += "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < ys.size(); ++k) {
        if (k) s += ' ';
        s += detail::fmt("%.2f", px(series.times[k])) + ',' + detail::fmt("%.2f", py(ys[k]));
    }
    s += "\"/>\n</svg>\n";
    return s;
}

inline void render_svg(const ChargeTimeSeries& series, PlotMetric metric, const std::filesystem::path& path,
                       const PlotLabel& label = {}) {
    write_text_file(path, svg_plot(series, metric, label));
}

}  // namespace qbattery
