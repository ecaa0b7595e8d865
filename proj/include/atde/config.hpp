#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atde/raster.hpp"

namespace atde {

/// Seed colours plus the hue half-width and the shared saturation/value window.
struct SeedSpec {
    std::vector<Rgb> seeds;
    int hsv_range = 10;
    int lower_sv = 100;
    int upper_sv = 255;

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

enum class Channel { R, G, B };
enum class Comparator { GreaterEqual, Less };

/// Keep a pixel only if `channel <comparator> threshold`.
struct ChannelRestriction {
    Channel channel = Channel::G;
    Comparator comparator = Comparator::GreaterEqual;
    int threshold = 0;

    bool admits(Rgb c) const noexcept {
        const int value = channel == Channel::R ? c.r : channel == Channel::G ? c.g : c.b;
        return comparator == Comparator::GreaterEqual ? value >= threshold : value < threshold;
    }

    friend bool operator==(const ChannelRestriction&, const ChannelRestriction&) = default;
};

struct ProjectConfig {
    static constexpr int kDefaultMinNeighbors = 5;
    static constexpr double kDefaultClockThreshold = 50000.0;

    std::string frames;  // frame directory, relative paths resolve against the config file
    Region clock_region;
    std::optional<Region> map_region;    // absent: whole frame
    std::optional<Region> water_region;  // scale normalisation box
    SeedSpec territory_seed;
    std::optional<SeedSpec> water_seed;
    std::vector<ChannelRestriction> restrictions;
    int min_neighbors = kDefaultMinNeighbors;
    double clock_threshold = kDefaultClockThreshold;
    int start_year = 0;  // astronomical numbering: 0 = 1 BCE, -199 = 200 BCE
    int end_year = 0;
    std::string label;
    std::size_t water_frame = 0;  // source frame used for water counting

    std::size_t year_count() const noexcept { return static_cast<std::size_t>(end_year - start_year + 1); }

    friend bool operator==(const ProjectConfig&, const ProjectConfig&) = default;
};

/// Parses and validates a config document. Absent optional fields take their defaults.
/// Throws ParseError (naming the field) or ValidationError.
ProjectConfig load_config(std::string_view document);

/// Reads `path`; relative `frames` entries stay as written (see resolve_frames_path).
ProjectConfig load_config_file(const std::filesystem::path& path);

/// Serialises to the same schema load_config accepts. Output is deterministic.
std::string serialize_config(const ProjectConfig& config);

/// Throws ValidationError on any broken invariant.
void validate_config(const ProjectConfig& config);
void validate_seed_spec(const SeedSpec& spec, const char* what);

std::filesystem::path resolve_frames_path(const ProjectConfig& config, const std::filesystem::path& config_dir);

char channel_name(Channel c) noexcept;
const char* comparator_symbol(Comparator c) noexcept;

}  // namespace atde
