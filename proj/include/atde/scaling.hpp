#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "atde/config.hpp"
#include "atde/extractor.hpp"
#include "atde/raster.hpp"

namespace atde {

struct ScaleRecord {
    std::string label;
    std::size_t water_pixels = 0;
    double factor = 1.0;
};

/// Pixels inside `box` matching the water seed bounds. No restriction, no DNF.
std::size_t count_water_pixels(const RasterFrame& frame, const Region& box, const SeedSpec& water_seed);

/// water_pixels / reference_water_pixels.
double scale_factor(std::size_t water_pixels, std::size_t reference_water_pixels);

/// Builds one record per (label, count); the record labelled `reference` gets factor 1.
std::vector<ScaleRecord> scale_records(const std::vector<std::pair<std::string, std::size_t>>& counts,
                                       const std::string& reference);

/// Divides every value by `factor`. A series can only be scaled once.
YearSeries apply_scale(const YearSeries& series, double factor);

/// Divides every value of every (scaled) series by the single global maximum.
std::vector<YearSeries> relative_normalize(const std::vector<YearSeries>& collection);

}  // namespace atde
