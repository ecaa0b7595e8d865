#include "atde/clock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "atde/error.hpp"

namespace atde {

std::uint64_t frame_delta_score(const RasterFrame& previous, const RasterFrame& current, const Region& window) {
    if (previous.width() != current.width() || previous.height() != current.height()) {
        throw DimensionError("clock frames differ in size");
    }
    if (!window.fits(current.width(), current.height())) {
        throw ValidationError("clock window lies outside the " + std::to_string(current.width()) + "x" +
                              std::to_string(current.height()) + " frame");
    }
    const auto a = previous.bytes();
    const auto b = current.bytes();
    const std::size_t stride = static_cast<std::size_t>(current.width()) * 3;
    std::uint64_t total = 0;
    for (int y = window.y0; y < window.y1; ++y) {
        const std::size_t begin = static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(window.x0) * 3;
        const std::size_t end = begin + static_cast<std::size_t>(window.width()) * 3;
        std::uint32_t row = 0;
        for (std::size_t i = begin; i < end; ++i) {
            row += static_cast<std::uint32_t>(std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i])));
        }
        total += row;
    }
    return total;
}

std::vector<std::size_t> change_points(std::span<const std::uint64_t> scores, double threshold) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (static_cast<double>(scores[i]) > threshold) {
            out.push_back(i + 1);
        }
    }
    return out;
}

ClockSeries scan_clock(const FrameSource& source, const Region& window, double threshold) {
    if (source.size() < 2) {
        throw ValidationError("clock scan needs >= 2 frames, source holds " + std::to_string(source.size()));
    }
    ClockSeries series;
    series.threshold = threshold;
    series.scores.reserve(source.size() - 1);
    RasterFrame previous = source.frame(0);
    for (std::size_t t = 1; t < source.size(); ++t) {
        RasterFrame current = source.frame(t);
        series.scores.push_back(frame_delta_score(previous, current, window));
        previous = std::move(current);
    }
    series.change_points = change_points(series.scores, threshold);
    return series;
}

ClockSeries scan_clock(std::span<const RasterFrame> frames, const Region& window, double threshold) {
    if (frames.size() < 2) {
        throw ValidationError("clock scan needs >= 2 frames, got " + std::to_string(frames.size()));
    }
    ClockSeries series;
    series.threshold = threshold;
    series.scores.reserve(frames.size() - 1);
    for (std::size_t t = 1; t < frames.size(); ++t) {
        series.scores.push_back(frame_delta_score(frames[t - 1], frames[t], window));
    }
    series.change_points = change_points(series.scores, threshold);
    return series;
}

std::vector<HistogramBin> score_histogram(const ClockSeries& series, std::size_t bin_count) {
    if (bin_count == 0) {
        throw ValidationError("histogram needs at least one bin");
    }
    if (series.scores.empty()) {
        throw ValidationError("histogram of an empty score series");
    }
    const auto max_score = *std::max_element(series.scores.begin(), series.scores.end());
    // All-zero scores still get a unit-wide range so bin edges stay distinct.
    const double upper = max_score == 0 ? 1.0 : static_cast<double>(max_score);
    const double width = upper / static_cast<double>(bin_count);
    std::vector<HistogramBin> bins(bin_count);
    for (std::size_t i = 0; i < bin_count; ++i) {
        bins[i].lo = width * static_cast<double>(i);
        bins[i].hi = i + 1 == bin_count ? upper : width * static_cast<double>(i + 1);
    }
    for (const auto s : series.scores) {
        // Integer bin arithmetic avoids edge drift: bin = floor(s * n / upper).
        std::size_t bin = max_score == 0
                              ? 0
                              : static_cast<std::size_t>((static_cast<unsigned __int128>(s) * bin_count) / max_score);
        bins[std::min(bin, bin_count - 1)].count += 1;
    }
    return bins;
}

YearIndex build_year_index(const ClockSeries& series, std::size_t frame_count, int start_year, int end_year,
                           bool resample) {
    if (start_year > end_year) {
        throw ValidationError("start_year is after end_year");
    }
    std::vector<std::size_t> starts{0};
    for (const auto cp : series.change_points) {
        if (cp == 0 || cp >= frame_count || cp <= starts.back()) {
            throw ValidationError("change point " + std::to_string(cp) + " is not a valid ascending frame index");
        }
        starts.push_back(cp);
    }
    const std::size_t intervals = starts.size();
    const std::size_t years = static_cast<std::size_t>(end_year - start_year) + 1;

    YearIndex index;
    if (intervals == years) {
        for (std::size_t i = 0; i < intervals; ++i) {
            index.entries.push_back({starts[i], start_year + static_cast<int>(i)});
        }
        return index;
    }
    if (!resample) {
        throw YearMismatchError(intervals, years);
    }
    index.resampled = true;
    for (std::size_t j = 0; j < years; ++j) {
        std::size_t interval = 0;
        if (years > 1) {
            const double pos = static_cast<double>(j) * static_cast<double>(intervals - 1) / static_cast<double>(years - 1);
            interval = static_cast<std::size_t>(std::floor(pos + 0.5));
        }
        index.entries.push_back({starts[std::min(interval, intervals - 1)], start_year + static_cast<int>(j)});
    }
    return index;
}

std::vector<YearFrame> condense(const FrameSource& source, const YearIndex& index) {
    for (const auto& e : index.entries) {
        if (e.frame >= source.size()) {
            throw ValidationError("year " + std::to_string(e.year) + " references frame " + std::to_string(e.frame) +
                                  " of a " + std::to_string(source.size()) + "-frame source");
        }
    }
    std::vector<YearFrame> out;
    out.reserve(index.entries.size());
    for (const auto& e : index.entries) {
        out.push_back({e.year, e.frame, source.frame(e.frame)});
    }
    return out;
}

}  // namespace atde
