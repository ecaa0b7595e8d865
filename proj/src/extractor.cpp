#include "atde/extractor.hpp"

#include <cmath>
#include <string>

#include "atde/error.hpp"

namespace atde {

void validate_series(const YearSeries& series) {
    for (std::size_t i = 0; i < series.entries.size(); ++i) {
        const auto& e = series.entries[i];
        if (i > 0 && e.year != series.entries[i - 1].year + 1) {
            throw ValidationError("series '" + series.label + "': year " + std::to_string(e.year) + " does not follow " +
                                  std::to_string(series.entries[i - 1].year));
        }
        if (!(e.value >= 0.0) || !std::isfinite(e.value)) {
            throw ValidationError("series '" + series.label + "': negative or non-finite value at year " +
                                  std::to_string(e.year));
        }
        if (series.normalized && e.value > 1.0) {
            throw ValidationError("series '" + series.label + "': normalised value above 1 at year " +
                                  std::to_string(e.year));
        }
    }
    if (series.scale_factor && !(*series.scale_factor > 0.0)) {
        throw ValidationError("series '" + series.label + "': scale factor must be positive");
    }
}

Rgb mean_seed_color(const SeedSpec& spec) {
    if (spec.seeds.empty()) {
        throw ValidationError("mean colour of an empty seed list");
    }
    unsigned long r = 0;
    unsigned long g = 0;
    unsigned long b = 0;
    for (const Rgb& c : spec.seeds) {
        r += c.r;
        g += c.g;
        b += c.b;
    }
    const auto n = spec.seeds.size();
    return {static_cast<std::uint8_t>(r / n), static_cast<std::uint8_t>(g / n), static_cast<std::uint8_t>(b / n)};
}

FrameProcessor::FrameProcessor(const ProjectConfig& config) : config_(config), bounds_(seed_bounds(config.territory_seed)) {
    validate_config(config_);
    warnings_ = self_exclusion_warnings(config_.territory_seed, bounds_);
}

FrameResult FrameProcessor::process(const RasterFrame& frame) const {
    const RasterFrame map = config_.map_region ? crop(frame, *config_.map_region) : frame;
    BinaryMask mask = in_range_mask(HsvImage(map), bounds_);
    for (const auto& r : config_.restrictions) {
        mask = apply_channel_restriction(mask, map, r);
    }
    mask = dnf(mask, config_.min_neighbors);
    const std::size_t count = count_mask(mask);
    return {count, std::move(mask)};
}

FrameResult process_frame(const RasterFrame& frame, const ProjectConfig& config) {
    return FrameProcessor(config).process(frame);
}

RasterFrame render_validation_frame(const BinaryMask& mask, Rgb color) {
    if (mask.width() <= 0 || mask.height() <= 0) {
        throw ValidationError("validation frame of an empty mask");
    }
    RasterFrame out(mask.width(), mask.height());
    auto bytes = out.bytes();
    const auto bits = mask.bits();
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) {
            bytes[3 * i] = color.r;
            bytes[3 * i + 1] = color.g;
            bytes[3 * i + 2] = color.b;
        }
    }
    return out;
}

Extraction extract_series(const std::vector<YearFrame>& condensed, const ProjectConfig& config) {
    const FrameProcessor processor(config);
    const Rgb mean = mean_seed_color(config.territory_seed);
    Extraction out;
    out.series.label = config.label;
    out.warnings = processor.warnings();
    for (std::size_t i = 0; i < condensed.size(); ++i) {
        if (i > 0 && condensed[i].year != condensed[i - 1].year + 1) {
            throw ValidationError("condensed frames must cover consecutive years");
        }
        FrameResult r = processor.process(condensed[i].frame);
        out.series.entries.push_back({condensed[i].year, static_cast<double>(r.count)});
        out.validation_frames.push_back(render_validation_frame(r.mask, mean));
    }
    return out;
}

}  // namespace atde
