#pragma once

#include <string>
#include <vector>

#include "atde/extractor.hpp"

namespace atde {

struct PlotStyle {
    int width = 900;
    int height = 500;
    std::string title;
    int y_ticks = 5;
};

/// Deterministic SVG line chart: one polyline per series, years on x, values on y.
/// The y-range is [0, 1] for normalised series and [0, max value] otherwise.
/// Throws ValidationError for an empty list or mixed normalisation states.
std::string emit_plot(const std::vector<YearSeries>& series, const PlotStyle& style = {});

}  // namespace atde
