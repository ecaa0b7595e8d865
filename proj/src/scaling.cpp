#include "atde/scaling.hpp"

#include <algorithm>

#include "atde/error.hpp"
#include "atde/segmentation.hpp"

namespace atde {

std::size_t count_water_pixels(const RasterFrame& frame, const Region& box, const SeedSpec& water_seed) {
    if (!box.fits(frame.width(), frame.height())) {
        throw ValidationError("water box [" + std::to_string(box.x0) + "," + std::to_string(box.y0) + "," +
                              std::to_string(box.x1) + "," + std::to_string(box.y1) + "] exceeds the " +
                              std::to_string(frame.width()) + "x" + std::to_string(frame.height()) + " frame");
    }
    const HsvBounds bounds = seed_bounds(water_seed);
    return count_mask(in_range_mask(HsvImage(crop(frame, box)), bounds));
}

double scale_factor(std::size_t water_pixels, std::size_t reference_water_pixels) {
    if (reference_water_pixels == 0) {
        throw ValidationError("reference video has no water pixels; cannot derive scale factors");
    }
    return static_cast<double>(water_pixels) / static_cast<double>(reference_water_pixels);
}

std::vector<ScaleRecord> scale_records(const std::vector<std::pair<std::string, std::size_t>>& counts,
                                       const std::string& reference) {
    const auto ref = std::find_if(counts.begin(), counts.end(), [&](const auto& c) { return c.first == reference; });
    if (ref == counts.end()) {
        throw ValidationError("reference label '" + reference + "' not among the measured videos");
    }
    std::vector<ScaleRecord> out;
    for (const auto& [label, pixels] : counts) {
        const double f = scale_factor(pixels, ref->second);
        if (!(f > 0.0)) {
            throw ValidationError("video '" + label + "' has no water pixels in its box");
        }
        out.push_back({label, pixels, f});
    }
    return out;
}

YearSeries apply_scale(const YearSeries& series, double factor) {
    if (!(factor > 0.0)) {
        throw ValidationError("scale factor must be positive");
    }
    if (series.scale_factor) {
        throw ValidationError("series '" + series.label + "' is already scaled");
    }
    if (series.normalized) {
        throw ValidationError("series '" + series.label + "' is already normalised");
    }
    YearSeries out = series;
    for (auto& e : out.entries) {
        e.value /= factor;
    }
    out.scale_factor = factor;
    return out;
}

std::vector<YearSeries> relative_normalize(const std::vector<YearSeries>& collection) {
    if (collection.empty()) {
        throw ValidationError("nothing to normalise");
    }
    double global_max = 0.0;
    for (const auto& s : collection) {
        if (!s.scale_factor) {
            throw ValidationError("series '" + s.label + "' must be scaled before relative normalisation");
        }
        if (s.normalized) {
            throw ValidationError("series '" + s.label + "' is already normalised");
        }
        for (const auto& e : s.entries) {
            global_max = std::max(global_max, e.value);
        }
    }
    if (!(global_max > 0.0)) {
        throw ValidationError("every value in the collection is zero; no maximum to normalise by");
    }
    std::vector<YearSeries> out = collection;
    for (auto& s : out) {
        for (auto& e : s.entries) {
            e.value /= global_max;
        }
        s.normalized = true;
    }
    return out;
}

}  // namespace atde
