#include "atde/segmentation.hpp"

#include <algorithm>
#include <string>

#include "atde/error.hpp"

namespace atde {

namespace {

constexpr int kHueSteps = 180;

// floor((2n + d) / 2d) for n >= 0, d > 0: n/d rounded half up.
constexpr int round_ratio(long n, long d) noexcept { return static_cast<int>((2 * n + d) / (2 * d)); }

void require_same_size(const BinaryMask& mask, int width, int height, const char* what) {
    if (mask.width() != width || mask.height() != height) {
        throw DimensionError(std::string(what) + ": mask is " + std::to_string(mask.width()) + "x" +
                             std::to_string(mask.height()) + ", frame is " + std::to_string(width) + "x" +
                             std::to_string(height));
    }
}

}  // namespace

HsvColor rgb_to_hsv(Rgb c) noexcept {
    const int r = c.r;
    const int g = c.g;
    const int b = c.b;
    const int max = std::max({r, g, b});
    const int min = std::min({r, g, b});
    const int delta = max - min;

    HsvColor out;
    out.v = max;
    if (max == 0 || delta == 0) {
        out.s = 0;
        out.h = 0;
        return out;
    }
    out.s = round_ratio(255L * delta, max);

    // Hue in degrees is (base * delta + 60 * diff) / delta; halve it by doubling the denominator.
    long numerator = 0;
    if (max == r) {
        numerator = 60L * (g - b);
    } else if (max == g) {
        numerator = 120L * delta + 60L * (b - r);
    } else {
        numerator = 240L * delta + 60L * (r - g);
    }
    if (numerator < 0) {
        numerator += 360L * delta;
    }
    out.h = round_ratio(numerator, 2L * delta) % kHueSteps;
    return out;
}

HsvBounds seed_bounds(const SeedSpec& spec) {
    validate_seed_spec(spec, "seed spec");
    HsvBounds bounds;
    for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
        const HsvColor seed = rgb_to_hsv(spec.seeds[i]);
        const auto pair = [&](int lo, int hi) {
            return HsvBoundPair{{lo, spec.lower_sv, spec.lower_sv}, {hi, spec.upper_sv, spec.upper_sv}};
        };
        const int lo = seed.h - spec.hsv_range;
        const int hi = seed.h + spec.hsv_range;
        if (2 * spec.hsv_range + 1 >= kHueSteps) {
            bounds.pairs.push_back(pair(0, kHueSteps - 1));
        } else if (lo < 0) {
            bounds.pairs.push_back(pair(0, hi));
            bounds.pairs.push_back(pair(lo + kHueSteps, kHueSteps - 1));
        } else if (hi >= kHueSteps) {
            bounds.pairs.push_back(pair(lo, kHueSteps - 1));
            bounds.pairs.push_back(pair(0, hi - kHueSteps));
        } else {
            bounds.pairs.push_back(pair(lo, hi));
        }
    }
    for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
        if (!bounds.contains(rgb_to_hsv(spec.seeds[i]))) {
            bounds.self_excluded.push_back(i);
        }
    }
    return bounds;
}

std::vector<std::string> self_exclusion_warnings(const SeedSpec& spec, const HsvBounds& bounds) {
    std::vector<std::string> out;
    for (const auto i : bounds.self_excluded) {
        const Rgb c = spec.seeds.at(i);
        const HsvColor hsv = rgb_to_hsv(c);
        out.push_back("seed " + std::to_string(i) + " (" + std::to_string(c.r) + ", " + std::to_string(c.g) + ", " +
                      std::to_string(c.b) + ") -> HSV (" + std::to_string(hsv.h) + ", " + std::to_string(hsv.s) +
                      ", " + std::to_string(hsv.v) + ") falls outside its own bounds (S/V window [" +
                      std::to_string(spec.lower_sv) + ", " + std::to_string(spec.upper_sv) +
                      "]); pixels of this shade will not be detected");
    }
    return out;
}

HsvImage::HsvImage(const RasterFrame& frame) : width_(frame.width()), height_(frame.height()) {
    pixels_.reserve(frame.pixel_count());
    const auto bytes = frame.bytes();
    for (std::size_t i = 0; i < bytes.size(); i += 3) {
        pixels_.push_back(rgb_to_hsv({bytes[i], bytes[i + 1], bytes[i + 2]}));
    }
}

BinaryMask::BinaryMask(int width, int height, bool value)
    : width_(width), height_(height),
      bits_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), value ? 1 : 0) {
    if (width < 0 || height < 0) {
        throw ValidationError("mask dimensions must be non-negative");
    }
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
    if (bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw DimensionError("mask bit count does not match its dimensions");
    }
    for (auto& b : bits_) {
        b = b != 0 ? 1 : 0;
    }
}

BinaryMask BinaryMask::from_rows(const std::vector<std::vector<int>>& rows) {
    const int height = static_cast<int>(rows.size());
    const int width = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    std::vector<std::uint8_t> bits;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != width) {
            throw DimensionError("ragged mask rows");
        }
        for (const int v : row) {
            bits.push_back(v != 0 ? 1 : 0);
        }
    }
    return BinaryMask(width, height, std::move(bits));
}

std::vector<std::uint8_t> BinaryMask::to_bytes() const {
    std::vector<std::uint8_t> out(bits_.size());
    std::transform(bits_.begin(), bits_.end(), out.begin(), [](std::uint8_t b) -> std::uint8_t { return b ? 255 : 0; });
    return out;
}

BinaryMask in_range_mask(const HsvImage& image, const HsvBounds& bounds) {
    BinaryMask mask(image.width(), image.height());
    auto bits = mask.bits();
    const auto pixels = image.pixels();
    // Pairs are OR-ed into the accumulated mask one after another.
    for (const auto& pair : bounds.pairs) {
        for (std::size_t i = 0; i < pixels.size(); ++i) {
            if (!bits[i] && pair.contains(pixels[i])) {
                bits[i] = 1;
            }
        }
    }
    return mask;
}

BinaryMask apply_channel_restriction(const BinaryMask& mask, const RasterFrame& frame,
                                     const ChannelRestriction& restriction) {
    require_same_size(mask, frame.width(), frame.height(), "channel restriction");
    BinaryMask out = mask;
    auto bits = out.bits();
    const auto bytes = frame.bytes();
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] && !restriction.admits({bytes[3 * i], bytes[3 * i + 1], bytes[3 * i + 2]})) {
            bits[i] = 0;
        }
    }
    return out;
}

std::vector<std::uint8_t> neighbor_counts(const BinaryMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    std::vector<std::uint8_t> counts(mask.size(), 0);
    if (w == 0 || h == 0) {
        return counts;
    }
    const auto bits = mask.bits();
    // Vertical 3-sums per column, then a horizontal 3-sum, minus the centre pixel.
    std::vector<std::uint8_t> column(static_cast<std::size_t>(w));
    for (int y = 0; y < h; ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * static_cast<std::size_t>(w);
        for (int x = 0; x < w; ++x) {
            std::uint8_t s = bits[row + static_cast<std::size_t>(x)];
            if (y > 0) {
                s += bits[row - static_cast<std::size_t>(w) + static_cast<std::size_t>(x)];
            }
            if (y + 1 < h) {
                s += bits[row + static_cast<std::size_t>(w) + static_cast<std::size_t>(x)];
            }
            column[static_cast<std::size_t>(x)] = s;
        }
        for (int x = 0; x < w; ++x) {
            int s = column[static_cast<std::size_t>(x)];
            if (x > 0) {
                s += column[static_cast<std::size_t>(x - 1)];
            }
            if (x + 1 < w) {
                s += column[static_cast<std::size_t>(x + 1)];
            }
            counts[row + static_cast<std::size_t>(x)] =
                static_cast<std::uint8_t>(s - bits[row + static_cast<std::size_t>(x)]);
        }
    }
    return counts;
}

BinaryMask dnf(const BinaryMask& mask, int min_neighbors) {
    if (min_neighbors < 0 || min_neighbors > 8) {
        throw ValidationError("min_neighbors " + std::to_string(min_neighbors) +
                              " outside [0, 8]; a pixel has only 8 neighbours");
    }
    if (min_neighbors == 0) {
        return mask;
    }
    const auto counts = neighbor_counts(mask);
    BinaryMask out = mask;
    auto bits = out.bits();
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] && counts[i] < min_neighbors) {
            bits[i] = 0;
        }
    }
    return out;
}

std::size_t count_mask(const BinaryMask& mask) noexcept {
    const auto bits = mask.bits();
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

}  // namespace atde
