#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "atde/config.hpp"
#include "atde/frame_source.hpp"
#include "atde/raster.hpp"
#include "atde/segmentation.hpp"

namespace atde::synth {

/// Portable deterministic generator (splitmix64). The standard distributions are not
/// bit-identical across library implementations, so draws are derived here directly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, n), n > 0, rejection-sampled.
    std::uint64_t below(std::uint64_t n) noexcept {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x = next();
        while (x >= limit) {
            x = next();
        }
        return x % n;
    }
    int between(int lo, int hi) noexcept {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }
    double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool chance(double p) noexcept { return unit() < p; }
    Rgb color() noexcept {
        const std::uint64_t x = next();
        return {static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(x >> 8), static_cast<std::uint8_t>(x >> 16)};
    }

private:
    std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

struct Distractor {
    Region region;
    Rgb color;
};

struct YearTerritory {
    std::size_t area = 0;
    std::size_t shade = 0;  // index into FixtureSpec::palette
};

/// Animated-map surrogate. Territory for each year fills `territory_box` row-major with
/// exactly `area` pixels of one palette shade; the clock block repaints by an exact L1 amount
/// at every year boundary.
struct FixtureSpec {
    int width = 320;
    int height = 240;
    int start_year = 0;
    std::size_t frames_per_year = 1;
    Rgb background{230, 220, 190};
    std::vector<Rgb> palette;
    Region territory_box;
    std::vector<YearTerritory> schedule;
    Region clock_block;
    std::vector<std::uint64_t> repaint_l1;  // one per year boundary, or a single value for all
    std::uint64_t clock_noise_l1 = 0;       // bound on ambient in-window L1 between consecutive frames
    double noise_rate = 0.0;                // salt-and-pepper flip probability outside the clock block
    std::vector<Distractor> distractors;

    std::size_t years() const noexcept { return schedule.size(); }
    std::size_t frame_count() const noexcept { return schedule.size() * frames_per_year; }
    std::uint64_t repaint_at(std::size_t boundary) const;
};

struct GroundTruth {
    std::vector<std::size_t> counts;          // per year, before noise
    std::vector<std::size_t> change_points;   // first frame of every year after the first
    std::vector<BinaryMask> year_masks;       // full-frame territory masks
    std::size_t frames_per_year = 1;

    const BinaryMask& frame_mask(std::size_t frame) const { return year_masks.at(frame / frames_per_year); }
};

class FixtureRenderer {
public:
    /// Throws ValidationError for an infeasible spec (area beyond the box, clock too small, ...).
    FixtureRenderer(FixtureSpec spec, std::uint64_t seed);

    std::size_t frame_count() const noexcept { return spec_.frame_count(); }
    const FixtureSpec& spec() const noexcept { return spec_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const GroundTruth& truth() const noexcept { return truth_; }

    RasterFrame clean_frame(std::size_t index) const;
    RasterFrame frame(std::size_t index) const;

private:
    void paint_clock(RasterFrame& frame, std::uint64_t amount) const;
    void paint_jitter(RasterFrame& frame, Rng& rng) const;

    FixtureSpec spec_;
    std::uint64_t seed_;
    GroundTruth truth_;
    std::vector<std::uint64_t> clock_amounts_;  // painted L1 per year
    Region paint_area_;
    Region jitter_row_;
};

/// Renders fixture frames on demand.
class FixtureSource final : public FrameSource {
public:
    explicit FixtureSource(const FixtureRenderer& renderer) : renderer_(renderer) {}
    std::size_t size() const override { return renderer_.frame_count(); }
    int width() const override { return renderer_.spec().width; }
    int height() const override { return renderer_.spec().height; }
    RasterFrame frame(std::size_t index) const override;

private:
    const FixtureRenderer& renderer_;
};

/// Writes `frames/frame_%06d.png` and `fixture.json` under `directory`.
void write_fixture(const FixtureRenderer& renderer, const std::filesystem::path& directory);

std::string fixture_manifest(const FixtureRenderer& renderer);
FixtureSpec fixture_spec_from_json(const std::string& document);
std::string fixture_spec_to_json(const FixtureSpec& spec);

// Reference colours of the blue territory / ocean pair used throughout the tests.
inline constexpr Rgb kSongDark{47, 170, 235};
inline constexpr Rgb kSongMid{103, 207, 254};
inline constexpr Rgb kSongPale{201, 238, 254};
inline constexpr Rgb kOcean{49, 135, 235};

SeedSpec song_seed_spec();

/// 30 frames, three years of ten, clock repaint 80000 with ambient noise <= 3000.
FixtureSpec clock_fixture_spec();

/// Multi-year territory with an ocean distractor; `frame_count` must be a multiple of 5.
FixtureSpec dynasty_fixture_spec(std::size_t frame_count, double noise_rate);

/// Config matching a fixture: song seeds, G >= 150, clock window = clock block.
ProjectConfig fixture_config(const FixtureSpec& spec, const std::string& frames_path, int min_neighbors);

struct BlockFrame {
    RasterFrame frame;
    std::vector<Region> blocks;  // dark, mid, pale, ocean
};

/// Four separated blocks (dark, mid, pale territory shades and ocean) on a black background.
BlockFrame song_block_frame(int block_width, int block_height, int gap);

RasterFrame upscale_nearest(const RasterFrame& frame, int factor);

// ---------------------------------------------------------------------------
// Brute-force reference for the segmentation pipeline. Shares no code with it.

HsvColor oracle_hsv(Rgb c);
std::vector<std::vector<int>> oracle_neighbor_counts(const BinaryMask& mask);
BinaryMask oracle_dnf(const BinaryMask& mask, int min_neighbors);
BinaryMask oracle_mask(const RasterFrame& frame, const ProjectConfig& config);

struct OracleCase {
    RasterFrame frame;
    ProjectConfig config;
};

/// Random frame/config pair up to 64x64 biased toward hue wrap-around and pixels sitting
/// exactly on a bound.
OracleCase random_oracle_case(Rng& rng, int min_neighbors);

}  // namespace atde::synth
