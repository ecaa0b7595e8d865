#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "atde/clock.hpp"
#include "atde/error.hpp"
#include "atde/extractor.hpp"
#include "atde/image_io.hpp"
#include "atde/synth.hpp"
#include "test_support.hpp"

namespace atde {
namespace {

synth::FixtureSpec three_year_spec() {
    synth::FixtureSpec s;
    s.width = 64;
    s.height = 48;
    s.start_year = 1;
    s.frames_per_year = 5;
    s.palette = {synth::kSongDark};
    s.clock_block = {0, 0, 64, 8};
    s.territory_box = {2, 10, 62, 46};
    s.schedule = {{100, 0}, {150, 0}, {120, 0}};
    s.repaint_l1 = {20000};
    return s;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(Fixture, ThreeYearExample) {
    const synth::FixtureRenderer r(three_year_spec(), 1);
    EXPECT_EQ(r.frame_count(), 15u);
    EXPECT_EQ(r.truth().change_points, (std::vector<std::size_t>{5, 10}));
    EXPECT_EQ(r.truth().counts, (std::vector<std::size_t>{100, 150, 120}));
    for (std::size_t y = 0; y < 3; ++y) {
        EXPECT_EQ(count_mask(r.truth().year_masks[y]), r.truth().counts[y]);
    }
    const ClockSeries clock = scan_clock(synth::FixtureSource(r), r.spec().clock_block, 10000);
    EXPECT_EQ(clock.change_points, r.truth().change_points);
    for (std::size_t t = 1; t < 15; ++t) {
        if (t % 5 == 0) {
            EXPECT_EQ(clock.score_at(t), 20000u);
        } else {
            EXPECT_EQ(clock.score_at(t), 0u);
        }
    }
}

TEST(Fixture, RepaintAmountIsExactUnderJitter) {
    const synth::FixtureRenderer r(synth::clock_fixture_spec(), 77);
    // Clean frames carry only the repaint; jitter adds at most the ambient budget.
    for (std::size_t t = 1; t < r.frame_count(); ++t) {
        const auto clean = frame_delta_score(r.clean_frame(t - 1), r.clean_frame(t), r.spec().clock_block);
        EXPECT_EQ(clean, t % 10 == 0 ? 80000u : 0u) << t;
        const auto noisy = frame_delta_score(r.frame(t - 1), r.frame(t), r.spec().clock_block);
        EXPECT_LE(noisy > clean ? noisy - clean : clean - noisy, 3000u) << t;
    }
}

TEST(Fixture, NoiseFreeFramesMatchTruthMasks) {
    const synth::FixtureRenderer r(synth::dynasty_fixture_spec(30, 0.0), 4);
    const SeedSpec seeds = synth::song_seed_spec();
    const HsvBounds b = seed_bounds(seeds);
    for (std::size_t t = 0; t < r.frame_count(); t += 3) {
        BinaryMask m = in_range_mask(HsvImage(r.frame(t)), b);
        m = apply_channel_restriction(m, r.frame(t), {Channel::G, Comparator::GreaterEqual, 150});
        EXPECT_EQ(m, r.truth().frame_mask(t)) << t;
    }
}

TEST(Fixture, DeterministicDirectories) {
    testing::TempDir a;
    testing::TempDir b;
    const auto spec = synth::dynasty_fixture_spec(10, 0.01);
    synth::write_fixture(synth::FixtureRenderer(spec, 42), a.path());
    synth::write_fixture(synth::FixtureRenderer(spec, 42), b.path());
    for (std::size_t i = 0; i < 10; ++i) {
        const auto name = std::filesystem::path("frames") / indexed_name("frame", i);
        EXPECT_EQ(slurp(a.path() / name), slurp(b.path() / name));
    }
    EXPECT_EQ(slurp(a.path() / "fixture.json"), slurp(b.path() / "fixture.json"));

    testing::TempDir c;
    synth::write_fixture(synth::FixtureRenderer(spec, 43), c.path());
    EXPECT_NE(slurp(a.path() / "frames" / "frame_000000.png"), slurp(c.path() / "frames" / "frame_000000.png"));
}

TEST(Fixture, FramesRenderIndependentlyOfOrder) {
    const synth::FixtureRenderer r(synth::dynasty_fixture_spec(20, 0.02), 8);
    const RasterFrame late = r.frame(17);
    for (std::size_t i = 0; i < 17; ++i) (void)r.frame(i);
    EXPECT_EQ(r.frame(17), late);
}

TEST(Fixture, InfeasibleSpecsAreRejected) {
    auto s = three_year_spec();
    s.schedule[1].area = s.territory_box.area() + 1;
    EXPECT_THROW(synth::FixtureRenderer(s, 1), ValidationError);
    s = three_year_spec();
    s.territory_box = {0, 0, 100, 10};
    EXPECT_THROW(synth::FixtureRenderer(s, 1), ValidationError);
    s = three_year_spec();
    s.repaint_l1 = {64ULL * 8 * 3 * 255 + 1};
    EXPECT_THROW(synth::FixtureRenderer(s, 1), ValidationError);
    EXPECT_THROW(synth::dynasty_fixture_spec(12, 0.0), ValidationError);
}

TEST(Fixture, SpecJsonRoundTrip) {
    const auto spec = synth::dynasty_fixture_spec(25, 0.01);
    const std::string doc = synth::fixture_spec_to_json(spec);
    EXPECT_EQ(synth::fixture_spec_to_json(synth::fixture_spec_from_json(doc)), doc);
}

TEST(Fixture, NoiseRateIsRoughlyHonoured) {
    const synth::FixtureRenderer r(synth::dynasty_fixture_spec(5, 0.01), 3);
    const RasterFrame clean = r.clean_frame(0);
    const RasterFrame noisy = r.frame(0);
    std::size_t changed = 0;
    std::size_t eligible = 0;
    for (int y = r.spec().clock_block.y1; y < clean.height(); ++y) {
        for (int x = 0; x < clean.width(); ++x) {
            ++eligible;
            changed += clean.at(x, y) == noisy.at(x, y) ? 0 : 1;
        }
    }
    const double rate = static_cast<double>(changed) / static_cast<double>(eligible);
    EXPECT_GT(rate, 0.008);
    EXPECT_LT(rate, 0.012);
}

TEST(Oracle, ReferenceMatrixAndBlackFrame) {
    const auto in = BinaryMask::from_rows(
        {{0, 1, 0, 0, 1}, {1, 1, 0, 1, 0}, {0, 1, 1, 1, 0}, {0, 0, 1, 0, 0}, {1, 0, 0, 0, 1}});
    EXPECT_EQ(synth::oracle_dnf(in, 3), BinaryMask::from_rows({{0, 0, 0, 0, 0},
                                                                {1, 1, 0, 1, 0},
                                                                {0, 1, 1, 1, 0},
                                                                {0, 0, 1, 0, 0},
                                                                {0, 0, 0, 0, 0}}));
    ProjectConfig c;
    c.territory_seed = synth::song_seed_spec();
    c.min_neighbors = 0;
    EXPECT_EQ(count_mask(synth::oracle_mask(RasterFrame(16, 16), c)), 0u);
}

TEST(Oracle, MatchesPipelineOnRandomCases) {
    synth::Rng rng(2718);
    std::size_t wraps = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto kase = synth::random_oracle_case(rng, trial % 9);
        const FrameResult got = process_frame(kase.frame, kase.config);
        ASSERT_EQ(got.mask, synth::oracle_mask(kase.frame, kase.config)) << "trial " << trial;
        for (const auto& p : seed_bounds(kase.config.territory_seed).pairs) {
            wraps += p.upper.h == 179 && p.lower.h > 0 ? 1 : 0;
        }
    }
    EXPECT_GT(wraps, 0u);
}

}  // namespace
}  // namespace atde
