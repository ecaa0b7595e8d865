#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "atde/artifacts.hpp"
#include "atde/cli.hpp"
#include "atde/config.hpp"
#include "atde/image_io.hpp"
#include "atde/synth.hpp"
#include "test_support.hpp"

namespace atde {
namespace {

namespace fs = std::filesystem;

struct Invocation {
    int status = 0;
    std::string out;
    std::string err;
};

Invocation run(std::vector<std::string> args) {
    ::setenv("ATDE_NO_COLOR", "1", 1);
    args.insert(args.begin(), "atde");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Invocation r;
    r.status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) { return read_text_file(p); }

TEST(Cli, UnknownSubcommandFails) {
    const Invocation r = run({"frobnicate"});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(run({}).status, 0);
}

TEST(Cli, UnreadableConfigNamesTheStage) {
    testing::TempDir dir;
    const Invocation r = run({"scan-clock", "--config", (dir / "missing.json").string(), "--out", dir.path().string()});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("[config]"), std::string::npos) << r.err;
}

TEST(Cli, ScanClockNeedsTwoFrames) {
    testing::TempDir dir;
    write_frame_directory(dir / "frames", {RasterFrame(8, 8)});
    ProjectConfig c;
    c.frames = "frames";
    c.clock_region = {0, 0, 8, 2};
    c.territory_seed = synth::song_seed_spec();
    write_file_atomic(dir / "config.json", serialize_config(c));
    const Invocation r = run({"scan-clock", "--config", (dir / "config.json").string(), "--out", dir.path().string()});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("[scan-clock]"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find(">= 2 frames"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir / "scores.csv"));
}

TEST(Cli, SynthThenExtractReproducesGroundTruth) {
    testing::TempDir dir;
    const fs::path fx = dir / "fixture";
    ASSERT_EQ(run({"synth", "--out", fx.string(), "--frames", "40", "--seed", "5"}).status, 0);
    const Invocation scan = run({"scan-clock", "--config", (fx / "config.json").string(), "--out", (dir / "scan").string()});
    ASSERT_EQ(scan.status, 0) << scan.err;
    const Invocation ex = run({"extract", "--config", (fx / "config.json").string(), "--out", (dir / "ex").string(), "--masks"});
    ASSERT_EQ(ex.status, 0) << ex.err;
    EXPECT_NE(ex.err.find("warning"), std::string::npos);  // pale seed self-exclusion

    const auto manifest = nlohmann::json::parse(slurp(fx / "fixture.json"));
    std::string expected = "year,count\n";
    for (const auto& e : manifest["ground_truth"]["counts"]) {
        expected += std::to_string(e[0].get<int>()) + "," + std::to_string(e[1].get<std::size_t>()) + "\n";
    }
    EXPECT_EQ(slurp(dir / "ex" / "series.csv"), expected);

    std::string cps = "t\n";
    for (const auto& t : manifest["ground_truth"]["change_points"]) cps += std::to_string(t.get<std::size_t>()) + "\n";
    EXPECT_EQ(slurp(dir / "scan" / "changepoints.csv"), cps);

    // validation frames: non-black pixel count equals the series count, colour is the seed mean
    const auto truth = manifest["ground_truth"]["counts"];
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const RasterFrame v = read_png(dir / "ex" / "validation" / indexed_name("valid", i));
        std::size_t lit = 0;
        for (int y = 0; y < v.height(); ++y) {
            for (int x = 0; x < v.width(); ++x) {
                const Rgb c = v.at(x, y);
                if (c == Rgb{0, 0, 0}) continue;
                ++lit;
                EXPECT_EQ(c, (Rgb{117, 205, 247}));
            }
        }
        EXPECT_EQ(lit, truth[i][1].get<std::size_t>());
        EXPECT_TRUE(fs::exists(dir / "ex" / "masks" / indexed_name("mask", i)));
    }
}

TEST(Cli, CondenseWritesOneFramePerYear) {
    testing::TempDir dir;
    ASSERT_EQ(run({"synth", "--out", dir.path().string(), "--frames", "20"}).status, 0);
    const Invocation r = run({"condense", "--config", (dir / "config.json").string(), "--out", (dir / "c").string()});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(slurp(dir / "c" / "retained.csv"), "year,frame\n960,0\n961,5\n962,10\n963,15\n");
    EXPECT_EQ(read_file_bytes(dir / "c" / "condensed" / "frame_000002.png"),
              read_file_bytes(dir / "frames" / "frame_000010.png"));
}

TEST(Cli, YearMismatchIsReportedUnlessResampling) {
    testing::TempDir dir;
    ASSERT_EQ(run({"synth", "--out", dir.path().string(), "--frames", "20"}).status, 0);
    ProjectConfig c = load_config_file(dir / "config.json");
    c.end_year += 2;
    write_file_atomic(dir / "wide.json", serialize_config(c));
    const Invocation bad = run({"condense", "--config", (dir / "wide.json").string(), "--out", (dir / "c").string()});
    EXPECT_NE(bad.status, 0);
    EXPECT_NE(bad.err.find("[year-index]"), std::string::npos) << bad.err;
    const Invocation ok = run({"condense", "--config", (dir / "wide.json").string(), "--out", (dir / "c").string(),
                        "--force-resample"});
    EXPECT_EQ(ok.status, 0) << ok.err;
    EXPECT_NE(ok.err.find("resampled"), std::string::npos);
}

TEST(Cli, ScaleNormalizePlot) {
    testing::TempDir dir;
    ASSERT_EQ(run({"synth", "--out", (dir / "a").string(), "--frames", "15"}).status, 0);
    // Second "video": the same fixture at twice the linear zoom.
    {
        const auto frames = open_frame_source(dir / "a" / "frames");
        std::vector<RasterFrame> big;
        for (std::size_t i = 0; i < frames->size(); ++i) big.push_back(synth::upscale_nearest(frames->frame(i), 2));
        write_frame_directory(dir / "b" / "frames", big);
        ProjectConfig c = load_config_file(dir / "a" / "config.json");
        const auto twice = [](Region r) { return Region{2 * r.x0, 2 * r.y0, 2 * r.x1, 2 * r.y1}; };
        c.clock_region = twice(c.clock_region);
        c.map_region = twice(*c.map_region);
        c.water_region = twice(*c.water_region);
        c.label = "zoomed";
        c.clock_threshold *= 4;
        write_file_atomic(dir / "b" / "config.json", serialize_config(c));
    }
    const Invocation s = run({"scale", "--config", (dir / "a" / "config.json").string(), "--config",
                       (dir / "b" / "config.json").string(), "--out", dir.path().string()});
    ASSERT_EQ(s.status, 0) << s.err;
    const auto records = parse_scales_csv(slurp(dir / "scales.csv"));
    ASSERT_EQ(records.size(), 2u);
    EXPECT_EQ(records[0].factor, 1.0);
    EXPECT_EQ(records[1].factor, 4.0);

    ASSERT_EQ(run({"extract", "--config", (dir / "a" / "config.json").string(), "--out", (dir / "ea").string()}).status, 0);
    ASSERT_EQ(run({"extract", "--config", (dir / "b" / "config.json").string(), "--out", (dir / "eb").string()}).status, 0);
    const Invocation n = run({"normalize", (dir / "ea" / "series.json").string(), (dir / "eb" / "series.json").string(),
                       "--scales", (dir / "scales.csv").string(), "--out", (dir / "norm").string()});
    ASSERT_EQ(n.status, 0) << n.err;
    const YearSeries a = parse_series_json(slurp(dir / "norm" / "synthetic" / "series.json"));
    const YearSeries b = parse_series_json(slurp(dir / "norm" / "zoomed" / "series.json"));
    ASSERT_EQ(a.entries.size(), b.entries.size());
    double max = 0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        // zoom x2 quadruples areas, the factor 4 undoes it
        EXPECT_NEAR(a.entries[i].value, b.entries[i].value, 1e-12);
        max = std::max({max, a.entries[i].value, b.entries[i].value});
    }
    EXPECT_EQ(max, 1.0);

    const Invocation p = run({"plot", (dir / "norm" / "synthetic" / "series.json").string(),
                       (dir / "norm" / "zoomed" / "series.json").string(), "--out", dir.path().string()});
    ASSERT_EQ(p.status, 0) << p.err;
    const std::string svg = slurp(dir / "plot.svg");
    EXPECT_NE(svg.find("data-label=\"synthetic\""), std::string::npos);
    EXPECT_NE(svg.find("data-label=\"zoomed\""), std::string::npos);
}

TEST(Cli, NormalizeNeedsFactorsForRawSeries) {
    testing::TempDir dir;
    write_file_atomic(dir / "s.json", "{\"label\":\"x\",\"entries\":[[1,4]],\"scale_factor\":null,\"normalized\":false}\n");
    const Invocation r = run({"normalize", (dir / "s.json").string(), "--out", dir.path().string()});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("[scale]"), std::string::npos) << r.err;
}

TEST(Cli, ScaleRejectsBadRect) {
    testing::TempDir dir;
    ASSERT_EQ(run({"synth", "--out", dir.path().string(), "--frames", "5"}).status, 0);
    const Invocation r = run({"scale", "--config", (dir / "config.json").string(), "--rect", "1,2,3", "--out",
                       dir.path().string()});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("--rect"), std::string::npos);
}

}  // namespace
}  // namespace atde
