#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <span>
#include <string>

#include "hypermatch/errors.hpp"
#include "hypermatch/experiments.hpp"

namespace hypermatch {

enum class PlotX { Auto, VertexCount, EdgeCount };

struct PlotStyle {
    PlotX x_source = PlotX::Auto;
    std::string x_label;  // defaults to "n" or "M" per the chosen x source
    std::string y_label = "mean matching number";
    std::string title;
    std::optional<double> marker_x;  // e.g. the unit-regime threshold
    int width = 800;
    int height = 500;
};

namespace svg_detail {

inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

/// Step of roughly (hi-lo)/5 rounded to 1/2/5 x 10^k.
inline double nice_step(double lo, double hi) {
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r < 1.5) return mag;
    if (r < 3.5) return 2.0 * mag;
    if (r < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

} // namespace svg_detail

/// Standalone SVG: mean polyline, CI whiskers, axes with ticks, optional
/// dashed vertical marker. No external fonts or resources.
inline std::string render_plot(std::span<const SummaryRow> summary, const PlotStyle& style = {}) {
    if (summary.empty()) throw RenderError("cannot render an empty summary");

    PlotX xs = style.x_source;
    if (xs == PlotX::Auto) {
        bool all_same_n = true;
        for (const SummaryRow& r : summary) all_same_n &= (r.n == summary[0].n);
        xs = all_same_n ? PlotX::EdgeCount : PlotX::VertexCount;
    }
    const std::string x_label =
        !style.x_label.empty() ? style.x_label : (xs == PlotX::EdgeCount ? "M" : "n");

    auto x_of = [&](const SummaryRow& r) {
        return xs == PlotX::EdgeCount ? static_cast<double>(r.m) : static_cast<double>(r.n);
    };

    double xmin = x_of(summary[0]), xmax = xmin;
    double ymin = summary[0].ci_lo, ymax = summary[0].ci_hi;
    for (const SummaryRow& r : summary) {
        xmin = std::min(xmin, x_of(r));
        xmax = std::max(xmax, x_of(r));
        ymin = std::min(ymin, r.ci_lo);
        ymax = std::max(ymax, r.ci_hi);
    }
    if (style.marker_x) {
        xmin = std::min(xmin, *style.marker_x);
        xmax = std::max(xmax, *style.marker_x);
    }
    if (xmax == xmin) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (ymax == ymin) {
        ymin -= 1.0;
        ymax += 1.0;
    }

    const double w = style.width, h = style.height;
    const double ml = 70, mr = 20, mt = style.title.empty() ? 20 : 44, mb = 55;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

    using svg_detail::num;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" +
         num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!style.title.empty()) {
        s += "<text x=\"" + num(w / 2) + "\" y=\"24\" text-anchor=\"middle\" "
             "font-family=\"sans-serif\" font-size=\"16\">" + style.title + "</text>\n";
    }

    // axes
    s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(h - mb) + "\" x2=\"" + num(w - mr) +
         "\" y2=\"" + num(h - mb) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" +
         num(h - mb) + "\" stroke=\"black\"/>\n";

    // ticks
    const double xstep = svg_detail::nice_step(xmin, xmax);
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9 * xstep; x += xstep) {
        s += "<line x1=\"" + num(px(x)) + "\" y1=\"" + num(h - mb) + "\" x2=\"" + num(px(x)) +
             "\" y2=\"" + num(h - mb + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(px(x)) + "\" y=\"" + num(h - mb + 20) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + num(x) +
             "</text>\n";
    }
    const double ystep = svg_detail::nice_step(ymin, ymax);
    for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-9 * ystep; y += ystep) {
        s += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(py(y)) + "\" x2=\"" + num(ml) +
             "\" y2=\"" + num(py(y)) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(ml - 8) + "\" y=\"" + num(py(y) + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + num(y) +
             "</text>\n";
    }

    // axis labels
    s += "<text x=\"" + num((ml + w - mr) / 2) + "\" y=\"" + num(h - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + x_label +
         "</text>\n";
    s += "<text x=\"16\" y=\"" + num((mt + h - mb) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 16 " +
         num((mt + h - mb) / 2) + ")\">" + style.y_label + "</text>\n";

    // optional threshold marker
    if (style.marker_x) {
        const double mx = px(*style.marker_x);
        s += "<line x1=\"" + num(mx) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(mx) + "\" y2=\"" +
             num(h - mb) + "\" stroke=\"red\" stroke-dasharray=\"5,4\"/>\n";
        s += "<text x=\"" + num(mx + 4) + "\" y=\"" + num(mt + 12) +
             "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"red\">" +
             x_label + " = " + num(*style.marker_x) + "</text>\n";
    }

    // CI whiskers
    for (const SummaryRow& r : summary) {
        const double x = px(x_of(r));
        s += "<line x1=\"" + num(x) + "\" y1=\"" + num(py(r.ci_lo)) + "\" x2=\"" + num(x) +
             "\" y2=\"" + num(py(r.ci_hi)) + "\" stroke=\"#1f77b4\"/>\n";
        for (double yv : {r.ci_lo, r.ci_hi}) {
            s += "<line x1=\"" + num(x - 3) + "\" y1=\"" + num(py(yv)) + "\" x2=\"" +
                 num(x + 3) + "\" y2=\"" + num(py(yv)) + "\" stroke=\"#1f77b4\"/>\n";
        }
    }

    // mean polyline and points
    s += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const SummaryRow& r : summary) {
        s += num(px(x_of(r))) + "," + num(py(r.mean)) + " ";
    }
    s += "\"/>\n";
    for (const SummaryRow& r : summary) {
        s += "<circle cx=\"" + num(px(x_of(r))) + "\" cy=\"" + num(py(r.mean)) +
             "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
    }

    s += "</svg>\n";
    return s;
}

} // namespace hypermatch
