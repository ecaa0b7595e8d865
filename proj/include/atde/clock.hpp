#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "atde/frame_source.hpp"
#include "atde/raster.hpp"

namespace atde {

/// Difference scores over the clock window. `scores[i]` compares frame i+1 with frame i,
/// so frame index t maps to scores[t - 1].
struct ClockSeries {
    std::vector<std::uint64_t> scores;
    double threshold = 0.0;
    std::vector<std::size_t> change_points;  // frame indices t with score(t) > threshold, ascending

    std::size_t frame_count() const noexcept { return scores.size() + 1; }
    std::uint64_t score_at(std::size_t frame_index) const { return scores.at(frame_index - 1); }
};

struct YearIndexEntry {
    std::size_t frame = 0;
    int year = 0;

    friend bool operator==(const YearIndexEntry&, const YearIndexEntry&) = default;
};

struct YearIndex {
    std::vector<YearIndexEntry> entries;
    bool resampled = false;  // entries may repeat a frame when fewer intervals than years
};

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

/// Sum over the window of |dR| + |dG| + |dB|, computed in exact integer arithmetic.
std::uint64_t frame_delta_score(const RasterFrame& previous, const RasterFrame& current, const Region& window);

/// Change points are frames whose score is strictly greater than `threshold`.
ClockSeries scan_clock(const FrameSource& source, const Region& window, double threshold);
ClockSeries scan_clock(std::span<const RasterFrame> frames, const Region& window, double threshold);

/// Re-thresholds existing scores without touching pixels.
std::vector<std::size_t> change_points(std::span<const std::uint64_t> scores, double threshold);

/// Equal-width bins over [0, max score]; every bin is half-open except the last.
std::vector<HistogramBin> score_histogram(const ClockSeries& series, std::size_t bin_count);

/// One representative frame (the first) per interval between change points; interval i gets
/// start_year + i. With `resample` set, a count mismatch maps years onto intervals by
/// nearest-rank linear interpolation instead of throwing YearMismatchError.
YearIndex build_year_index(const ClockSeries& series, std::size_t frame_count, int start_year, int end_year,
                           bool resample = false);

struct YearFrame {
    int year = 0;
    std::size_t source_index = 0;
    RasterFrame frame;
};

std::vector<YearFrame> condense(const FrameSource& source, const YearIndex& index);

}  // namespace atde
