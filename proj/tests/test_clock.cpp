#include <gtest/gtest.h>

#include <cstdlib>

#include "atde/clock.hpp"
#include "atde/error.hpp"
#include "atde/synth.hpp"

namespace atde {
namespace {

// Straight per-pixel definition, used as the reference for the row-wise implementation.
std::uint64_t brute_score(const RasterFrame& a, const RasterFrame& b, const Region& w) {
    std::uint64_t s = 0;
    for (int y = w.y0; y < w.y1; ++y) {
        for (int x = w.x0; x < w.x1; ++x) {
            const Rgb p = a.at(x, y);
            const Rgb q = b.at(x, y);
            s += static_cast<std::uint64_t>(std::abs(p.r - q.r) + std::abs(p.g - q.g) + std::abs(p.b - q.b));
        }
    }
    return s;
}

RasterFrame random_frame(synth::Rng& rng, int w, int h) {
    RasterFrame f(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            f.set(x, y, rng.color());
        }
    }
    return f;
}

Region random_window(synth::Rng& rng, int w, int h) {
    const int x0 = rng.between(0, w - 1);
    const int y0 = rng.between(0, h - 1);
    return {x0, y0, rng.between(x0 + 1, w), rng.between(y0 + 1, h)};
}

TEST(FrameDeltaScore, IdenticalFramesScoreZero) {
    const RasterFrame f(10, 10, Rgb{3, 4, 5});
    EXPECT_EQ(frame_delta_score(f, f, {0, 0, 10, 10}), 0u);
}

TEST(FrameDeltaScore, SinglePixelChange) {
    RasterFrame a(10, 10);
    RasterFrame b = a;
    b.set(2, 3, {10, 20, 30});
    EXPECT_EQ(frame_delta_score(a, b, {0, 0, 5, 5}), 60u);
    EXPECT_EQ(frame_delta_score(a, b, {5, 5, 10, 10}), 0u);
}

TEST(FrameDeltaScore, Errors) {
    const RasterFrame a(10, 10);
    const RasterFrame b(10, 11);
    EXPECT_THROW(frame_delta_score(a, b, {0, 0, 5, 5}), DimensionError);
    EXPECT_THROW(frame_delta_score(a, a, {0, 0, 11, 5}), ValidationError);
}

TEST(FrameDeltaScore, Properties) {
    synth::Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const int w = rng.between(1, 30);
        const int h = rng.between(1, 30);
        const RasterFrame a = random_frame(rng, w, h);
        const RasterFrame b = random_frame(rng, w, h);
        const RasterFrame c = random_frame(rng, w, h);
        const Region outer = random_window(rng, w, h);
        const Region inner{rng.between(outer.x0, outer.x1 - 1), rng.between(outer.y0, outer.y1 - 1), 0, 0};
        const Region sub{inner.x0, inner.y0, rng.between(inner.x0 + 1, outer.x1), rng.between(inner.y0 + 1, outer.y1)};

        const auto ab = frame_delta_score(a, b, outer);
        EXPECT_EQ(ab, brute_score(a, b, outer));
        EXPECT_EQ(ab, frame_delta_score(b, a, outer));                          // symmetric
        EXPECT_LE(frame_delta_score(a, b, sub), ab);                              // window-monotone
        EXPECT_LE(frame_delta_score(a, c, outer), ab + frame_delta_score(b, c, outer));  // triangle

        // Pixels outside the window do not matter.
        RasterFrame b2 = b;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!outer.contains(x, y)) {
                    b2.set(x, y, rng.color());
                }
            }
        }
        EXPECT_EQ(frame_delta_score(a, b2, outer), ab);
    }
}

TEST(ScanClock, SyntheticRepaintsAreTheChangePoints) {
    const synth::FixtureRenderer renderer(synth::clock_fixture_spec(), 2024);
    const synth::FixtureSource source(renderer);
    const ClockSeries series = scan_clock(source, renderer.spec().clock_block, 50000);
    ASSERT_EQ(series.scores.size(), 29u);
    EXPECT_EQ(series.change_points, (std::vector<std::size_t>{10, 20}));
    EXPECT_EQ(series.change_points, renderer.truth().change_points);
    for (std::size_t t = 1; t < 30; ++t) {
        if (t == 10 || t == 20) {
            EXPECT_GE(series.score_at(t), 80000u);
            EXPECT_LE(series.score_at(t), 83000u);
        } else {
            EXPECT_LE(series.score_at(t), 3000u) << "t=" << t;
        }
    }
}

TEST(ScanClock, ThresholdIsStrict) {
    RasterFrame a(4, 4);
    RasterFrame b = a;
    b.set(0, 0, {100, 0, 0});
    const std::vector<RasterFrame> frames{a, b, a};
    EXPECT_TRUE(scan_clock(frames, {0, 0, 4, 4}, 100).change_points.empty());
    EXPECT_EQ(scan_clock(frames, {0, 0, 4, 4}, 99.5).change_points, (std::vector<std::size_t>{1, 2}));
}

TEST(ScanClock, IdenticalFramesHaveNoChangePoints) {
    const std::vector<RasterFrame> frames(6, RasterFrame(5, 5, Rgb{9, 9, 9}));
    EXPECT_TRUE(scan_clock(frames, {0, 0, 5, 5}, 0).change_points.empty());
}

TEST(ScanClock, NeedsTwoFrames) {
    const std::vector<RasterFrame> one{RasterFrame(5, 5)};
    EXPECT_THROW(scan_clock(one, {0, 0, 5, 5}, 0), ValidationError);
    EXPECT_THROW(scan_clock(MemoryFrameSource(one), {0, 0, 5, 5}, 0), ValidationError);
}

TEST(ScoreHistogram, DirectBinning) {
    ClockSeries s;
    s.scores = {0, 0, 100};
    const auto bins = score_histogram(s, 2);
    ASSERT_EQ(bins.size(), 2u);
    EXPECT_EQ(bins[0].lo, 0.0);
    EXPECT_EQ(bins[0].hi, 50.0);
    EXPECT_EQ(bins[0].count, 2u);
    EXPECT_EQ(bins[1].lo, 50.0);
    EXPECT_EQ(bins[1].hi, 100.0);
    EXPECT_EQ(bins[1].count, 1u);
}

TEST(ScoreHistogram, EqualScoresOccupyOneBin) {
    for (const std::uint64_t v : {0ULL, 7ULL, 123456ULL}) {
        ClockSeries s;
        s.scores = {v, v, v, v};
        const auto bins = score_histogram(s, 5);
        int occupied = 0;
        std::size_t total = 0;
        for (const auto& b : bins) {
            occupied += b.count > 0 ? 1 : 0;
            total += b.count;
        }
        EXPECT_EQ(occupied, 1);
        EXPECT_EQ(total, 4u);
    }
}

TEST(ScoreHistogram, SyntheticFixtureIsBimodal) {
    const synth::FixtureRenderer renderer(synth::clock_fixture_spec(), 2024);
    const ClockSeries series = scan_clock(synth::FixtureSource(renderer), renderer.spec().clock_block, 50000);
    const auto bins = score_histogram(series, 20);
    std::size_t total = 0;
    for (const auto& b : bins) {
        total += b.count;
    }
    EXPECT_EQ(total, 29u);
    EXPECT_EQ(bins.front().count, 27u);
    std::size_t repaint_bin = 0;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (bins[i].lo <= 80000.0 && (80000.0 < bins[i].hi || i + 1 == bins.size())) {
            repaint_bin = i;
        }
    }
    EXPECT_EQ(bins[repaint_bin].count, 2u);
}

TEST(ScoreHistogram, Errors) {
    ClockSeries empty;
    EXPECT_THROW(score_histogram(empty, 3), ValidationError);
    ClockSeries s;
    s.scores = {1};
    EXPECT_THROW(score_histogram(s, 0), ValidationError);
}

ClockSeries with_change_points(std::vector<std::size_t> cps) {
    ClockSeries s;
    s.change_points = std::move(cps);
    return s;
}

TEST(BuildYearIndex, IntervalRule) {
    const YearIndex idx = build_year_index(with_change_points({10, 20}), 30, 1000, 1002);
    EXPECT_EQ(idx.entries, (std::vector<YearIndexEntry>{{0, 1000}, {10, 1001}, {20, 1002}}));
    EXPECT_FALSE(idx.resampled);
}

TEST(BuildYearIndex, SingleInterval) {
    const YearIndex idx = build_year_index(with_change_points({}), 5, 1000, 1000);
    EXPECT_EQ(idx.entries, (std::vector<YearIndexEntry>{{0, 1000}}));
}

TEST(BuildYearIndex, MismatchReportsBothCounts) {
    try {
        (void)build_year_index(with_change_points({10}), 30, 1000, 1002);
        FAIL() << "expected YearMismatchError";
    } catch (const YearMismatchError& e) {
        EXPECT_EQ(e.intervals(), 2u);
        EXPECT_EQ(e.years(), 3u);
    }
}

TEST(BuildYearIndex, ResampleMoreIntervalsThanYears) {
    const YearIndex idx = build_year_index(with_change_points({2, 4, 6, 8}), 10, 1, 3, true);
    EXPECT_TRUE(idx.resampled);
    // five intervals onto three years: ranks 0, 2, 4
    EXPECT_EQ(idx.entries, (std::vector<YearIndexEntry>{{0, 1}, {4, 2}, {8, 3}}));
}

TEST(BuildYearIndex, ResampleFewerIntervalsThanYears) {
    const YearIndex idx = build_year_index(with_change_points({5}), 10, 1, 4, true);
    // two intervals onto four years: ranks round(0), round(1/3), round(2/3), round(1)
    EXPECT_EQ(idx.entries, (std::vector<YearIndexEntry>{{0, 1}, {0, 2}, {5, 3}, {5, 4}}));
}

TEST(BuildYearIndex, RetainedCountIsChangePointsPlusOne) {
    synth::Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t frames = static_cast<std::size_t>(rng.between(1, 60));
        std::vector<std::size_t> cps;
        for (std::size_t t = 1; t < frames; ++t) {
            if (rng.chance(0.2)) cps.push_back(t);
        }
        const int start = rng.between(-300, 300);
        const YearIndex idx = build_year_index(with_change_points(cps), frames, start, start + static_cast<int>(cps.size()));
        ASSERT_EQ(idx.entries.size(), cps.size() + 1);
        for (std::size_t i = 1; i < idx.entries.size(); ++i) {
            EXPECT_LT(idx.entries[i - 1].frame, idx.entries[i].frame);
            EXPECT_EQ(idx.entries[i].year, idx.entries[i - 1].year + 1);
        }
    }
}

TEST(Condense, KeepsOneFramePerYear) {
    const synth::FixtureRenderer renderer(synth::clock_fixture_spec(), 9);
    const synth::FixtureSource source(renderer);
    const ClockSeries series = scan_clock(source, renderer.spec().clock_block, 50000);
    const YearIndex idx = build_year_index(series, source.size(), 1000, 1002);
    const auto frames = condense(source, idx);
    ASSERT_EQ(frames.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(frames[i].year, 1000 + static_cast<int>(i));
        EXPECT_EQ(frames[i].source_index, i * 10);
        EXPECT_EQ(frames[i].frame, renderer.frame(i * 10));
    }
}

TEST(Condense, IndexPastTheEndIsAnError) {
    const std::vector<RasterFrame> raw(30, RasterFrame(2, 2));
    const MemoryFrameSource source(raw);
    YearIndex idx;
    idx.entries = {{0, 1}, {30, 2}};
    EXPECT_THROW(condense(source, idx), ValidationError);
}

}  // namespace
}  // namespace atde
