#include <gtest/gtest.h>

#include <fstream>

#include "atde/error.hpp"
#include "atde/frame_source.hpp"
#include "atde/image_io.hpp"
#include "atde/synth.hpp"
#include "test_support.hpp"

namespace atde {
namespace {

using testing::TempDir;

std::vector<RasterFrame> numbered_frames(std::size_t n, int w = 8, int h = 6) {
    std::vector<RasterFrame> frames;
    for (std::size_t i = 0; i < n; ++i) {
        RasterFrame f(w, h, Rgb{static_cast<std::uint8_t>(i * 20), 0, 0});
        f.set(1, 1, {1, 2, static_cast<std::uint8_t>(i)});
        frames.push_back(std::move(f));
    }
    return frames;
}

TEST(DirectoryFrameSource, YieldsFramesInIndexOrder) {
    TempDir dir;
    const auto frames = numbered_frames(10);
    write_frame_directory(dir.path(), frames);
    const auto source = open_frame_source(dir.path());
    ASSERT_EQ(source->size(), 10u);
    EXPECT_EQ(source->width(), 8);
    EXPECT_EQ(source->height(), 6);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(source->frame(i), frames[i]) << "frame " << i;
    }
}

TEST(DirectoryFrameSource, GapIsReportedAtItsIndex) {
    TempDir dir;
    write_frame_directory(dir.path(), numbered_frames(10));
    std::filesystem::remove(dir / "frame_000004.png");
    try {
        DirectoryFrameSource source(dir.path());
        FAIL() << "expected SourceError";
    } catch (const SourceError& e) {
        EXPECT_EQ(e.index(), 4u);
    }
}

TEST(DirectoryFrameSource, DimensionMismatchIsReported) {
    TempDir dir;
    write_frame_directory(dir.path(), numbered_frames(5, 80, 60));
    write_png(dir / "frame_000003.png", RasterFrame(64, 48));
    try {
        DirectoryFrameSource source(dir.path());
        FAIL() << "expected SourceError";
    } catch (const SourceError& e) {
        EXPECT_EQ(e.index(), 3u);
        EXPECT_NE(std::string(e.what()).find("dimension"), std::string::npos);
    }
}

TEST(DirectoryFrameSource, EmptyDirectoryIsAnError) {
    TempDir dir;
    EXPECT_THROW(DirectoryFrameSource source(dir.path()), SourceError);
    EXPECT_THROW(DirectoryFrameSource source(dir / "missing"), SourceError);
}

TEST(DirectoryFrameSource, IgnoresUnrelatedFiles) {
    TempDir dir;
    write_frame_directory(dir.path(), numbered_frames(3));
    std::ofstream(dir / "notes.txt") << "x";
    std::ofstream(dir / "frame_1.png") << "x";
    EXPECT_EQ(DirectoryFrameSource(dir.path()).size(), 3u);
}

TEST(DirectoryFrameSource, CorruptFrameNamesItsIndex) {
    TempDir dir;
    write_frame_directory(dir.path(), numbered_frames(3));
    std::ofstream(dir / "frame_000002.png", std::ios::trunc) << "not a png at all";
    try {
        DirectoryFrameSource source(dir.path());
        FAIL() << "expected SourceError";
    } catch (const SourceError& e) {
        EXPECT_EQ(e.index(), 2u);
    }
}

TEST(DirectoryFrameSource, OutOfRangeRead) {
    TempDir dir;
    write_frame_directory(dir.path(), numbered_frames(2));
    DirectoryFrameSource source(dir.path());
    EXPECT_THROW(source.frame(2), SourceError);
}

TEST(DirectoryFrameSource, TwoPassesAreIdentical) {
    TempDir dir;
    const synth::FixtureRenderer renderer(synth::clock_fixture_spec(), 3);
    synth::write_fixture(renderer, dir.path());
    const auto a = open_frame_source(dir / "frames");
    const auto b = open_frame_source(dir / "frames");
    ASSERT_EQ(a->size(), b->size());
    for (std::size_t i = 0; i < a->size(); ++i) {
        EXPECT_EQ(a->frame(i), b->frame(i));
        EXPECT_EQ(a->frame(i), renderer.frame(i));
    }
}

TEST(Png, RoundTripRandomFrames) {
    synth::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        RasterFrame f(rng.between(1, 40), rng.between(1, 40));
        for (int y = 0; y < f.height(); ++y) {
            for (int x = 0; x < f.width(); ++x) {
                f.set(x, y, rng.color());
            }
        }
        const auto bytes = encode_png(f);
        EXPECT_EQ(decode_png(bytes), f);
        EXPECT_EQ(encode_png(f), bytes);
    }
}

TEST(Png, GreyMaskDecodesAsRgb) {
    const auto png = encode_png_gray(3, 1, {0, 255, 0});
    const RasterFrame f = decode_png(png);
    EXPECT_EQ(f.at(1, 0), (Rgb{255, 255, 255}));
    EXPECT_EQ(f.at(0, 0), (Rgb{0, 0, 0}));
}

TEST(Png, GarbageIsRejected) {
    EXPECT_THROW(decode_png({1, 2, 3}), Error);
    auto truncated = encode_png(RasterFrame(10, 10, Rgb{1, 2, 3}));
    truncated.resize(truncated.size() / 2);
    EXPECT_THROW(decode_png(truncated), Error);
}

TEST(MemoryFrameSource, RejectsMixedSizes) {
    std::vector<RasterFrame> frames{RasterFrame(4, 4), RasterFrame(4, 5)};
    EXPECT_THROW(MemoryFrameSource{frames}, SourceError);
}

TEST(Raster, CropCopiesRegion) {
    RasterFrame f(4, 3);
    f.set(2, 1, {9, 8, 7});
    const RasterFrame c = crop(f, {1, 1, 3, 3});
    EXPECT_EQ(c.width(), 2);
    EXPECT_EQ(c.height(), 2);
    EXPECT_EQ(c.at(1, 0), (Rgb{9, 8, 7}));
    EXPECT_THROW(crop(f, {0, 0, 5, 1}), ValidationError);
}

}  // namespace
}  // namespace atde
