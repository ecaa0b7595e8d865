#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "atde/config.hpp"
#include "atde/raster.hpp"

namespace atde {

/// Hue in [0, 180) (degrees halved), saturation and value in [0, 255].
struct HsvColor {
    int h = 0;
    int s = 0;
    int v = 0;

    friend bool operator==(const HsvColor&, const HsvColor&) = default;
};

/// Hexcone conversion with exact integer rounding (half away from zero).
HsvColor rgb_to_hsv(Rgb c) noexcept;

struct HsvBoundPair {
    HsvColor lower;
    HsvColor upper;

    bool contains(const HsvColor& c) const noexcept {
        return lower.h <= c.h && c.h <= upper.h && lower.s <= c.s && c.s <= upper.s && lower.v <= c.v &&
               c.v <= upper.v;
    }
    friend bool operator==(const HsvBoundPair&, const HsvBoundPair&) = default;
};

struct HsvBounds {
    std::vector<HsvBoundPair> pairs;
    /// Seeds (by position in SeedSpec::seeds) that their own bounds do not detect.
    std::vector<std::size_t> self_excluded;

    bool contains(const HsvColor& c) const noexcept {
        for (const auto& p : pairs) {
            if (p.contains(c)) {
                return true;
            }
        }
        return false;
    }
};

/// One hue interval per seed, split in two when it crosses 0/180.
HsvBounds seed_bounds(const SeedSpec& spec);

/// Human-readable warnings for every entry of `bounds.self_excluded`.
std::vector<std::string> self_exclusion_warnings(const SeedSpec& spec, const HsvBounds& bounds);

class HsvImage {
public:
    HsvImage() = default;
    explicit HsvImage(const RasterFrame& frame);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    const HsvColor& at(int x, int y) const noexcept {
        return pixels_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)];
    }
    std::span<const HsvColor> pixels() const noexcept { return pixels_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<HsvColor> pixels_;
};

/// One flag per pixel, row-major.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height, bool value = false);
    BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

    /// Rows of 0/1 integers, e.g. {{0, 1}, {1, 1}}.
    static BinaryMask from_rows(const std::vector<std::vector<int>>& rows);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return bits_.size(); }

    bool at(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
    void set(int x, int y, bool value) noexcept { bits_[index(x, y)] = value ? 1 : 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::span<std::uint8_t> bits() noexcept { return bits_; }

    /// 0/255 bytes, the layout used for greyscale mask images.
    std::vector<std::uint8_t> to_bytes() const;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Set iff some bound pair contains the pixel (all bounds inclusive).
BinaryMask in_range_mask(const HsvImage& image, const HsvBounds& bounds);

/// Clears pixels whose chosen channel fails the comparator.
BinaryMask apply_channel_restriction(const BinaryMask& mask, const RasterFrame& frame,
                                     const ChannelRestriction& restriction);

/// Number of set pixels among the 8 neighbours of each pixel; outside the mask counts as unset.
std::vector<std::uint8_t> neighbor_counts(const BinaryMask& mask);

/// Direct neighbour filtering: keep a set pixel only if at least `min_neighbors` of its 8
/// neighbours are set. Throws ValidationError for min_neighbors outside [0, 8].
BinaryMask dnf(const BinaryMask& mask, int min_neighbors);

std::size_t count_mask(const BinaryMask& mask) noexcept;

}  // namespace atde
