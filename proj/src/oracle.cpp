// Literal per-pixel reference for the segmentation pipeline. Deliberately written without
// calling into segmentation.cpp: floating-point HSV, circular hue distance instead of split
// intervals, explicit 8-way neighbour enumeration.

#include <algorithm>
#include <cmath>

#include "atde/error.hpp"
#include "atde/synth.hpp"

namespace atde::synth {

namespace {

int round_half_away(double x) { return static_cast<int>(x < 0 ? -std::floor(-x + 0.5) : std::floor(x + 0.5)); }

bool seed_matches(const HsvColor& px, const HsvColor& seed, const SeedSpec& spec) {
    int d = std::abs(px.h - seed.h);
    d = std::min(d, 180 - d);
    return d <= spec.hsv_range && spec.lower_sv <= px.s && px.s <= spec.upper_sv && spec.lower_sv <= px.v &&
           px.v <= spec.upper_sv;
}

bool restriction_holds(const ChannelRestriction& r, Rgb c) {
    int value = 0;
    switch (r.channel) {
        case Channel::R: value = c.r; break;
        case Channel::G: value = c.g; break;
        case Channel::B: value = c.b; break;
    }
    switch (r.comparator) {
        case Comparator::GreaterEqual: return value >= r.threshold;
        case Comparator::Less: return value < r.threshold;
    }
    return false;
}

}  // namespace

HsvColor oracle_hsv(Rgb c) {
    const double r = c.r;
    const double g = c.g;
    const double b = c.b;
    const double hi = std::max(r, std::max(g, b));
    const double lo = std::min(r, std::min(g, b));
    const double span = hi - lo;
    HsvColor out;
    out.v = static_cast<int>(hi);
    out.s = hi == 0.0 ? 0 : round_half_away(255.0 * span / hi);
    if (span == 0.0) {
        out.h = 0;
        return out;
    }
    double degrees = 0.0;
    if (hi == r) {
        degrees = 60.0 * (g - b) / span;
    } else if (hi == g) {
        degrees = 120.0 + 60.0 * (b - r) / span;
    } else {
        degrees = 240.0 + 60.0 * (r - g) / span;
    }
    if (degrees < 0.0) {
        degrees += 360.0;
    }
    out.h = round_half_away(degrees / 2.0);
    if (out.h >= 180) {
        out.h -= 180;
    }
    return out;
}

std::vector<std::vector<int>> oracle_neighbor_counts(const BinaryMask& mask) {
    std::vector<std::vector<int>> counts(static_cast<std::size_t>(mask.height()),
                                         std::vector<int>(static_cast<std::size_t>(mask.width()), 0));
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            int n = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) {
                        continue;
                    }
                    const int nx = x + dx;
                    const int ny = y + dy;
                    if (nx >= 0 && ny >= 0 && nx < mask.width() && ny < mask.height() && mask.at(nx, ny)) {
                        ++n;
                    }
                }
            }
            counts[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = n;
        }
    }
    return counts;
}

BinaryMask oracle_dnf(const BinaryMask& mask, int min_neighbors) {
    const auto counts = oracle_neighbor_counts(mask);
    BinaryMask out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            out.set(x, y, mask.at(x, y) && counts[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] >= min_neighbors);
        }
    }
    return out;
}

BinaryMask oracle_mask(const RasterFrame& frame, const ProjectConfig& config) {
    const Region area = config.map_region.value_or(Region{0, 0, frame.width(), frame.height()});
    if (area.x0 < 0 || area.y0 < 0 || area.x1 > frame.width() || area.y1 > frame.height() || area.x0 >= area.x1 ||
        area.y0 >= area.y1) {
        throw ValidationError("oracle: map region outside the frame");
    }
    const SeedSpec& spec = config.territory_seed;
    std::vector<HsvColor> seeds;
    for (const Rgb s : spec.seeds) {
        seeds.push_back(oracle_hsv(s));
    }
    BinaryMask detected(area.width(), area.height());
    for (int y = area.y0; y < area.y1; ++y) {
        for (int x = area.x0; x < area.x1; ++x) {
            const Rgb c = frame.at(x, y);
            const HsvColor px = oracle_hsv(c);
            bool hit = false;
            for (const auto& s : seeds) {
                hit = hit || seed_matches(px, s, spec);
            }
            for (const auto& r : config.restrictions) {
                hit = hit && restriction_holds(r, c);
            }
            detected.set(x - area.x0, y - area.y0, hit);
        }
    }
    return oracle_dnf(detected, config.min_neighbors);
}

namespace {

Rgb reddish(Rng& rng) {
    // Hues within a few steps of 0/180.
    const int hi = rng.between(120, 255);
    const int lo = rng.between(0, hi / 2);
    const int mid = rng.between(lo, lo + (hi - lo) / 6);
    return rng.chance(0.5) ? Rgb{static_cast<std::uint8_t>(hi), static_cast<std::uint8_t>(lo), static_cast<std::uint8_t>(mid)}
                           : Rgb{static_cast<std::uint8_t>(hi), static_cast<std::uint8_t>(mid), static_cast<std::uint8_t>(lo)};
}

Rgb palette_color(Rng& rng) {
    switch (rng.below(5)) {
        case 0: return reddish(rng);
        case 1: {
            const auto g = static_cast<std::uint8_t>(rng.below(256));
            return {g, g, g};
        }
        case 2: {
            static constexpr Rgb kKnown[] = {kSongDark, kSongMid, kSongPale, kOcean};
            return kKnown[rng.below(4)];
        }
        default: return rng.color();
    }
}

}  // namespace

OracleCase random_oracle_case(Rng& rng, int min_neighbors) {
    const int w = rng.chance(0.3) ? rng.between(1, 8) : rng.between(1, 64);
    const int h = rng.chance(0.3) ? rng.between(1, 8) : rng.between(1, 64);

    std::vector<Rgb> palette(static_cast<std::size_t>(rng.between(2, 6)));
    for (auto& c : palette) {
        c = palette_color(rng);
    }

    // Blobby frames: each pixel mostly copies its left or upper neighbour.
    RasterFrame frame(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            Rgb c;
            if (rng.chance(0.05)) {
                c = rng.color();
            } else if (x > 0 && rng.chance(0.6)) {
                c = frame.at(x - 1, y);
            } else if (y > 0 && rng.chance(0.6)) {
                c = frame.at(x, y - 1);
            } else {
                c = palette[rng.below(palette.size())];
            }
            frame.set(x, y, c);
        }
    }

    ProjectConfig config;
    config.frames = "unused";
    config.clock_region = {0, 0, 1, 1};
    config.start_year = 0;
    config.end_year = 0;
    config.min_neighbors = min_neighbors;

    SeedSpec& spec = config.territory_seed;
    const std::size_t seed_count = static_cast<std::size_t>(rng.between(1, 3));
    for (std::size_t i = 0; i < seed_count; ++i) {
        spec.seeds.push_back(rng.chance(0.8) ? palette[rng.below(palette.size())] : reddish(rng));
    }
    const HsvColor anchor = oracle_hsv(spec.seeds.front());
    const HsvColor other = oracle_hsv(palette[rng.below(palette.size())]);
    switch (rng.below(4)) {
        case 0: {  // a palette hue lands exactly on the hue bound
            const int d = std::abs(anchor.h - other.h);
            spec.hsv_range = std::min(d, 180 - d);
            break;
        }
        case 1: spec.hsv_range = rng.between(0, 30); break;
        case 2: spec.hsv_range = rng.between(85, 95); break;
        default: spec.hsv_range = 10; break;
    }
    const int sv_a = rng.chance(0.5) ? other.s : other.v;
    const int sv_b = rng.chance(0.5) ? anchor.s : (rng.chance(0.5) ? other.v : rng.between(0, 255));
    switch (rng.below(3)) {
        case 0:
            spec.lower_sv = std::min(sv_a, sv_b);
            spec.upper_sv = std::max(sv_a, sv_b);
            break;
        case 1:
            spec.lower_sv = rng.between(0, 150);
            spec.upper_sv = 255;
            break;
        default:
            spec.lower_sv = 100;
            spec.upper_sv = 255;
            break;
    }

    const int restriction_count = rng.chance(0.5) ? 0 : rng.between(1, 2);
    for (int i = 0; i < restriction_count; ++i) {
        ChannelRestriction r;
        r.channel = static_cast<Channel>(rng.below(3));
        r.comparator = rng.chance(0.5) ? Comparator::GreaterEqual : Comparator::Less;
        const Rgb ref = palette[rng.below(palette.size())];
        const int exact = r.channel == Channel::R ? ref.r : r.channel == Channel::G ? ref.g : ref.b;
        r.threshold = rng.chance(0.5) ? exact : rng.between(0, 255);
        config.restrictions.push_back(r);
    }

    if (rng.chance(0.3) && w > 1 && h > 1) {
        const int x0 = rng.between(0, w - 2);
        const int y0 = rng.between(0, h - 2);
        config.map_region = Region{x0, y0, rng.between(x0 + 1, w), rng.between(y0 + 1, h)};
    }
    return {std::move(frame), std::move(config)};
}

}  // namespace atde::synth
