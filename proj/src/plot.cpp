#include "atde/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "atde/error.hpp"

namespace atde {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fixed(double v, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (const char c : text) {
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

std::string tick_label(double v, bool normalized) {
    if (normalized) {
        return fixed(v, 2);
    }
    if (std::fabs(v - std::round(v)) < 1e-9) {
        return fixed(v, 0);
    }
    return fixed(v, 1);
}

int year_step(int span) {
    for (const int step : {1, 2, 5, 10, 20, 25, 50, 100, 200, 250, 500, 1000}) {
        if (span / step <= 10) {
            return step;
        }
    }
    return 1000 * (span / 10000 + 1);
}

}  // namespace

std::string emit_plot(const std::vector<YearSeries>& series, const PlotStyle& style) {
    if (series.empty()) {
        throw ValidationError("plot needs at least one series");
    }
    const bool normalized = series.front().normalized;
    for (const auto& s : series) {
        if (s.normalized != normalized) {
            throw ValidationError("cannot plot normalised and raw series together ('" + s.label + "')");
        }
    }

    int year_min = 0;
    int year_max = 0;
    double value_max = 0.0;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& e : s.entries) {
            year_min = any ? std::min(year_min, e.year) : e.year;
            year_max = any ? std::max(year_max, e.year) : e.year;
            value_max = std::max(value_max, e.value);
            any = true;
        }
    }
    if (!any) {
        year_min = 0;
        year_max = 1;
    }
    if (year_min == year_max) {
        year_max = year_min + 1;
    }
    const double y_top = normalized ? 1.0 : (value_max > 0.0 ? value_max : 1.0);

    const double left = 80;
    const double right = 170;
    const double top = style.title.empty() ? 30 : 50;
    const double bottom = 60;
    const double plot_w = style.width - left - right;
    const double plot_h = style.height - top - bottom;
    const auto px = [&](double year) { return left + (year - year_min) / static_cast<double>(year_max - year_min) * plot_w; };
    const auto py = [&](double value) { return top + plot_h - value / y_top * plot_h; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
           std::to_string(style.height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " " +
           std::to_string(style.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(style.width) + "\" height=\"" +
           std::to_string(style.height) + "\" fill=\"#ffffff\"/>\n";
    if (!style.title.empty()) {
        svg += "<text x=\"" + fixed(left + plot_w / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
               escape(style.title) + "</text>\n";
    }

    // Axes.
    svg += "<g class=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n";
    svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top + plot_h) + "\" x2=\"" + fixed(left + plot_w) +
           "\" y2=\"" + fixed(top + plot_h) + "\"/>\n";
    svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(left) + "\" y2=\"" +
           fixed(top + plot_h) + "\"/>\n";
    svg += "</g>\n";

    svg += "<g class=\"y-ticks\">\n";
    const int ticks = std::max(style.y_ticks, 1);
    for (int i = 0; i <= ticks; ++i) {
        const double v = y_top * i / ticks;
        const double y = py(v);
        svg += "<line x1=\"" + fixed(left - 4) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(left) + "\" y2=\"" +
               fixed(y) + "\" stroke=\"#000000\"/>\n";
        svg += "<text x=\"" + fixed(left - 8) + "\" y=\"" + fixed(y + 4) + "\" text-anchor=\"end\">" +
               tick_label(v, normalized) + "</text>\n";
    }
    svg += "</g>\n";

    svg += "<g class=\"x-ticks\">\n";
    const int step = year_step(year_max - year_min);
    const int first = static_cast<int>(std::ceil(static_cast<double>(year_min) / step)) * step;
    for (int year = first; year <= year_max; year += step) {
        const double x = px(year);
        svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(top + plot_h) + "\" x2=\"" + fixed(x) + "\" y2=\"" +
               fixed(top + plot_h + 4) + "\" stroke=\"#000000\"/>\n";
        svg += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(top + plot_h + 18) + "\" text-anchor=\"middle\">" +
               std::to_string(year) + "</text>\n";
    }
    svg += "</g>\n";

    svg += "<text x=\"" + fixed(left + plot_w / 2) + "\" y=\"" + fixed(style.height - 15.0) +
           "\" text-anchor=\"middle\">Year</text>\n";
    svg += "<text x=\"18\" y=\"" + fixed(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           fixed(top + plot_h / 2) + ")\">" + (normalized ? "Relative extent" : "Pixel count") + "</text>\n";

    svg += "<g class=\"series\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        svg += "<polyline data-label=\"" + escape(s.label) + "\" stroke=\"" + kPalette[i % std::size(kPalette)] +
               "\" points=\"";
        for (std::size_t k = 0; k < s.entries.size(); ++k) {
            if (k > 0) {
                svg += " ";
            }
            svg += fixed(px(s.entries[k].year)) + "," + fixed(py(s.entries[k].value));
        }
        svg += "\"/>\n";
    }
    svg += "</g>\n";

    svg += "<g class=\"legend\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = top + 10 + 18.0 * static_cast<double>(i);
        const double x = left + plot_w + 15;
        svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(x + 20) + "\" y2=\"" + fixed(y) +
               "\" stroke=\"" + kPalette[i % std::size(kPalette)] + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fixed(x + 26) + "\" y=\"" + fixed(y + 4) + "\">" + escape(series[i].label) + "</text>\n";
    }
    svg += "</g>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace atde
