#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atde/clock.hpp"
#include "atde/config.hpp"
#include "atde/raster.hpp"
#include "atde/segmentation.hpp"

namespace atde {

struct SeriesEntry {
    int year = 0;
    double value = 0.0;

    friend bool operator==(const SeriesEntry&, const SeriesEntry&) = default;
};

/// Per-year territory size. Values start as raw pixel counts and become real-valued once scaled.
struct YearSeries {
    std::string label;
    std::vector<SeriesEntry> entries;
    std::optional<double> scale_factor;
    bool normalized = false;

    friend bool operator==(const YearSeries&, const YearSeries&) = default;
};

/// Throws ValidationError unless years step by exactly one and values are in range.
void validate_series(const YearSeries& series);

/// Per-channel mean of the seed colours, floored.
Rgb mean_seed_color(const SeedSpec& spec);

struct FrameResult {
    std::size_t count = 0;
    BinaryMask mask;  // covers map_region (or the whole frame)
};

/// Bounds are derived once and reused across frames.
class FrameProcessor {
public:
    explicit FrameProcessor(const ProjectConfig& config);

    FrameResult process(const RasterFrame& frame) const;

    const HsvBounds& bounds() const noexcept { return bounds_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    ProjectConfig config_;
    HsvBounds bounds_;
    std::vector<std::string> warnings_;
};

/// range mask -> restrictions (config order) -> DNF, over map_region.
FrameResult process_frame(const RasterFrame& frame, const ProjectConfig& config);

/// Detected pixels take `color`, everything else is black.
RasterFrame render_validation_frame(const BinaryMask& mask, Rgb color);

struct Extraction {
    YearSeries series;
    std::vector<RasterFrame> validation_frames;
    std::vector<std::string> warnings;
};

Extraction extract_series(const std::vector<YearFrame>& condensed, const ProjectConfig& config);

}  // namespace atde
