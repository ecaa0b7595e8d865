#include "atde/synth.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "atde/error.hpp"
#include "atde/image_io.hpp"

namespace atde::synth {

using nlohmann::json;

namespace {

constexpr std::uint64_t kChannelUnits = 255;
constexpr std::uint64_t kPixelUnits = 3 * kChannelUnits;
constexpr Rgb kJitterBase{128, 128, 128};

bool overlaps(const Region& a, const Region& b) noexcept {
    return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

std::string region_text(const Region& r) {
    return "[" + std::to_string(r.x0) + "," + std::to_string(r.y0) + "," + std::to_string(r.x1) + "," +
           std::to_string(r.y1) + "]";
}

json region_json(const Region& r) { return json::array({r.x0, r.y0, r.x1, r.y1}); }
json rgb_json(Rgb c) { return json::array({c.r, c.g, c.b}); }

Region region_from(const json& v) {
    return {v.at(0).get<int>(), v.at(1).get<int>(), v.at(2).get<int>(), v.at(3).get<int>()};
}
Rgb rgb_from(const json& v) {
    return {v.at(0).get<std::uint8_t>(), v.at(1).get<std::uint8_t>(), v.at(2).get<std::uint8_t>()};
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    Rng rng(seed ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
    return rng.next();
}

std::uint64_t FixtureSpec::repaint_at(std::size_t boundary) const {
    if (repaint_l1.empty()) {
        throw ValidationError("fixture has no clock repaint amount");
    }
    return repaint_l1.size() == 1 ? repaint_l1.front() : repaint_l1.at(boundary);
}

FixtureRenderer::FixtureRenderer(FixtureSpec spec, std::uint64_t seed) : spec_(std::move(spec)), seed_(seed) {
    const auto& s = spec_;
    if (s.width <= 0 || s.height <= 0) {
        throw ValidationError("fixture dimensions must be positive");
    }
    if (s.schedule.empty()) {
        throw ValidationError("fixture needs at least one year");
    }
    if (s.frames_per_year == 0) {
        throw ValidationError("frames_per_year must be >= 1");
    }
    if (s.palette.empty()) {
        throw ValidationError("fixture palette is empty");
    }
    if (!(s.noise_rate >= 0.0 && s.noise_rate <= 1.0)) {
        throw ValidationError("noise rate must lie in [0, 1]");
    }
    if (!s.territory_box.fits(s.width, s.height)) {
        throw ValidationError("territory box " + region_text(s.territory_box) + " does not fit the frame");
    }
    if (!s.clock_block.fits(s.width, s.height)) {
        throw ValidationError("clock block " + region_text(s.clock_block) + " does not fit the frame");
    }
    if (overlaps(s.clock_block, s.territory_box)) {
        throw ValidationError("clock block overlaps the territory box");
    }
    for (const auto& d : s.distractors) {
        if (!d.region.fits(s.width, s.height) || overlaps(d.region, s.clock_block)) {
            throw ValidationError("distractor " + region_text(d.region) + " is outside the frame or on the clock");
        }
    }
    if (s.years() > 1 && s.repaint_l1.size() != 1 && s.repaint_l1.size() != s.years() - 1) {
        throw ValidationError("repaint_l1 needs one value or one per year boundary");
    }

    paint_area_ = s.clock_block;
    if (s.clock_noise_l1 > 0) {
        if (s.clock_block.height() < 2) {
            throw ValidationError("clock block needs two rows when ambient clock noise is enabled");
        }
        paint_area_.y1 -= 1;
        jitter_row_ = {s.clock_block.x0, s.clock_block.y1 - 1, s.clock_block.x1, s.clock_block.y1};
    }
    const std::uint64_t capacity = paint_area_.area() * kPixelUnits;

    // Zig-zag the painted amount so consecutive years differ by exactly the repaint target.
    clock_amounts_.push_back(0);
    for (std::size_t y = 1; y < s.years(); ++y) {
        const std::uint64_t delta = s.repaint_at(y - 1);
        const std::uint64_t current = clock_amounts_.back();
        if (current + delta <= capacity) {
            clock_amounts_.push_back(current + delta);
        } else if (current >= delta) {
            clock_amounts_.push_back(current - delta);
        } else {
            throw ValidationError("clock block too small for a repaint of " + std::to_string(delta) + " (capacity " +
                                  std::to_string(capacity) + ")");
        }
    }

    truth_.frames_per_year = s.frames_per_year;
    const int box_w = s.territory_box.width();
    for (std::size_t y = 0; y < s.years(); ++y) {
        const auto& t = s.schedule[y];
        if (t.area > s.territory_box.area()) {
            throw ValidationError("territory area " + std::to_string(t.area) + " for year " + std::to_string(y) +
                                  " exceeds the " + std::to_string(s.territory_box.area()) + "-pixel box");
        }
        if (t.shade >= s.palette.size()) {
            throw ValidationError("territory shade index outside the palette");
        }
        BinaryMask mask(s.width, s.height);
        for (std::size_t k = 0; k < t.area; ++k) {
            mask.set(s.territory_box.x0 + static_cast<int>(k % static_cast<std::size_t>(box_w)),
                     s.territory_box.y0 + static_cast<int>(k / static_cast<std::size_t>(box_w)), true);
        }
        truth_.counts.push_back(t.area);
        truth_.year_masks.push_back(std::move(mask));
        if (y > 0) {
            truth_.change_points.push_back(y * s.frames_per_year);
        }
    }
}

void FixtureRenderer::paint_clock(RasterFrame& frame, std::uint64_t amount) const {
    frame.fill(paint_area_, {0, 0, 0});
    const int w = paint_area_.width();
    for (std::uint64_t p = 0; amount > 0; ++p) {
        const std::uint64_t a = std::min(amount, kPixelUnits);
        const auto channel = [a](std::uint64_t skip) {
            return static_cast<std::uint8_t>(std::min(a > skip ? a - skip : 0, kChannelUnits));
        };
        frame.set(paint_area_.x0 + static_cast<int>(p % static_cast<std::uint64_t>(w)),
                  paint_area_.y0 + static_cast<int>(p / static_cast<std::uint64_t>(w)),
                  {channel(0), channel(kChannelUnits), channel(2 * kChannelUnits)});
        amount -= a;
    }
}

void FixtureRenderer::paint_jitter(RasterFrame& frame, Rng& rng) const {
    if (spec_.clock_noise_l1 == 0) {
        return;
    }
    frame.fill(jitter_row_, kJitterBase);
    // Total |offset| from the base stays <= half the bound, so any two frames differ by <= the bound.
    const std::uint64_t budget = spec_.clock_noise_l1 / 2;
    const std::uint64_t slots = static_cast<std::uint64_t>(jitter_row_.width()) * 3;
    auto bytes = frame.bytes();
    for (std::uint64_t u = 0; u < budget; ++u) {
        const std::uint64_t slot = rng.below(slots);
        const int x = jitter_row_.x0 + static_cast<int>(slot / 3);
        const std::size_t at =
            (static_cast<std::size_t>(jitter_row_.y0) * static_cast<std::size_t>(spec_.width) + static_cast<std::size_t>(x)) * 3 +
            static_cast<std::size_t>(slot % 3);
        const bool up = (rng.next() & 1U) != 0;
        if (up && bytes[at] < 255) {
            ++bytes[at];
        } else if (!up && bytes[at] > 0) {
            --bytes[at];
        }
    }
}

RasterFrame FixtureRenderer::clean_frame(std::size_t index) const {
    if (index >= frame_count()) {
        throw SourceError("fixture index out of range", index);
    }
    const std::size_t year = index / spec_.frames_per_year;
    RasterFrame frame(spec_.width, spec_.height, spec_.background);
    for (const auto& d : spec_.distractors) {
        frame.fill(d.region, d.color);
    }
    const Rgb shade = spec_.palette[spec_.schedule[year].shade];
    const BinaryMask& mask = truth_.year_masks[year];
    const Region& box = spec_.territory_box;
    for (int y = box.y0; y < box.y1; ++y) {
        for (int x = box.x0; x < box.x1; ++x) {
            if (mask.at(x, y)) {
                frame.set(x, y, shade);
            }
        }
    }
    paint_clock(frame, clock_amounts_[year]);
    return frame;
}

RasterFrame FixtureRenderer::frame(std::size_t index) const {
    RasterFrame frame = clean_frame(index);
    Rng rng(mix_seed(seed_, index));
    paint_jitter(frame, rng);
    if (spec_.noise_rate > 0.0) {
        for (int y = 0; y < spec_.height; ++y) {
            for (int x = 0; x < spec_.width; ++x) {
                if (!spec_.clock_block.contains(x, y) && rng.chance(spec_.noise_rate)) {
                    frame.set(x, y, rng.color());
                }
            }
        }
    }
    return frame;
}

RasterFrame FixtureSource::frame(std::size_t index) const { return renderer_.frame(index); }

std::string fixture_spec_to_json(const FixtureSpec& s) {
    json doc = json::object();
    doc["width"] = s.width;
    doc["height"] = s.height;
    doc["start_year"] = s.start_year;
    doc["frames_per_year"] = s.frames_per_year;
    doc["background"] = rgb_json(s.background);
    json palette = json::array();
    for (const Rgb c : s.palette) {
        palette.push_back(rgb_json(c));
    }
    doc["palette"] = std::move(palette);
    doc["territory_box"] = region_json(s.territory_box);
    json schedule = json::array();
    for (const auto& t : s.schedule) {
        schedule.push_back({{"area", t.area}, {"shade", t.shade}});
    }
    doc["schedule"] = std::move(schedule);
    doc["clock_block"] = region_json(s.clock_block);
    doc["repaint_l1"] = s.repaint_l1;
    doc["clock_noise_l1"] = s.clock_noise_l1;
    doc["noise_rate"] = s.noise_rate;
    json distractors = json::array();
    for (const auto& d : s.distractors) {
        distractors.push_back({{"region", region_json(d.region)}, {"color", rgb_json(d.color)}});
    }
    doc["distractors"] = std::move(distractors);
    return doc.dump(2);
}

FixtureSpec fixture_spec_from_json(const std::string& document) {
    try {
        const json doc = json::parse(document);
        FixtureSpec s;
        s.width = doc.at("width").get<int>();
        s.height = doc.at("height").get<int>();
        s.start_year = doc.value("start_year", 0);
        s.frames_per_year = doc.at("frames_per_year").get<std::size_t>();
        if (doc.contains("background")) {
            s.background = rgb_from(doc["background"]);
        }
        for (const auto& c : doc.at("palette")) {
            s.palette.push_back(rgb_from(c));
        }
        s.territory_box = region_from(doc.at("territory_box"));
        for (const auto& t : doc.at("schedule")) {
            s.schedule.push_back({t.at("area").get<std::size_t>(), t.value("shade", std::size_t{0})});
        }
        s.clock_block = region_from(doc.at("clock_block"));
        s.repaint_l1 = doc.at("repaint_l1").get<std::vector<std::uint64_t>>();
        s.clock_noise_l1 = doc.value("clock_noise_l1", std::uint64_t{0});
        s.noise_rate = doc.value("noise_rate", 0.0);
        if (doc.contains("distractors")) {
            for (const auto& d : doc["distractors"]) {
                s.distractors.push_back({region_from(d.at("region")), rgb_from(d.at("color"))});
            }
        }
        return s;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("fixture spec: ") + e.what());
    }
}

std::string fixture_manifest(const FixtureRenderer& renderer) {
    json doc = json::object();
    doc["spec"] = json::parse(fixture_spec_to_json(renderer.spec()));
    doc["seed"] = renderer.seed();
    doc["frame_count"] = renderer.frame_count();
    json truth = json::object();
    json counts = json::array();
    for (std::size_t y = 0; y < renderer.truth().counts.size(); ++y) {
        counts.push_back(json::array({renderer.spec().start_year + static_cast<int>(y), renderer.truth().counts[y]}));
    }
    truth["counts"] = std::move(counts);
    truth["change_points"] = renderer.truth().change_points;
    doc["ground_truth"] = std::move(truth);
    return doc.dump(2) + "\n";
}

void write_fixture(const FixtureRenderer& renderer, const std::filesystem::path& directory) {
    const auto frames = directory / "frames";
    std::filesystem::create_directories(frames);
    for (std::size_t i = 0; i < renderer.frame_count(); ++i) {
        write_png(frames / indexed_name("frame", i), renderer.frame(i));
    }
    write_file_atomic(directory / "fixture.json", fixture_manifest(renderer));
}

SeedSpec song_seed_spec() {
    SeedSpec spec;
    spec.seeds = {kSongDark, kSongMid, kSongPale};
    return spec;
}

FixtureSpec clock_fixture_spec() {
    FixtureSpec s;
    s.width = 160;
    s.height = 120;
    s.start_year = 1000;
    s.frames_per_year = 10;
    s.palette = {kSongDark, kSongMid};
    s.clock_block = {0, 0, 160, 20};
    s.territory_box = {10, 30, 150, 110};
    s.schedule = {{3000, 0}, {4000, 1}, {3500, 0}};
    s.repaint_l1 = {80000};
    s.clock_noise_l1 = 3000;
    return s;
}

FixtureSpec dynasty_fixture_spec(std::size_t frame_count, double noise_rate) {
    constexpr std::size_t kFramesPerYear = 5;
    if (frame_count == 0 || frame_count % kFramesPerYear != 0) {
        throw ValidationError("dynasty fixture frame count must be a positive multiple of 5");
    }
    FixtureSpec s;
    s.width = 320;
    s.height = 240;
    s.start_year = 960;
    s.frames_per_year = kFramesPerYear;
    s.palette = {kSongDark, kSongMid};
    s.clock_block = {0, 0, 320, 24};
    s.territory_box = {10, 34, 250, 230};
    s.distractors = {{{260, 34, 310, 230}, kOcean}};
    s.repaint_l1 = {80000};
    s.clock_noise_l1 = 3000;
    s.noise_rate = noise_rate;
    const std::size_t years = frame_count / kFramesPerYear;
    const double box = static_cast<double>(s.territory_box.area());
    for (std::size_t y = 0; y < years; ++y) {
        // Rise, plateau with a dip, then decline.
        const double phase = years > 1 ? static_cast<double>(y) / static_cast<double>(years - 1) : 0.0;
        const double shape = 0.30 + 0.55 * std::sin(3.14159265358979 * phase) - (phase > 0.55 && phase < 0.7 ? 0.15 : 0.0);
        s.schedule.push_back({static_cast<std::size_t>(std::lround(box * shape)), (y / 7) % 2});
    }
    return s;
}

ProjectConfig fixture_config(const FixtureSpec& spec, const std::string& frames_path, int min_neighbors) {
    ProjectConfig c;
    c.frames = frames_path;
    c.clock_region = spec.clock_block;
    if (spec.clock_block.y0 == 0 && spec.clock_block.y1 < spec.height) {
        c.map_region = Region{0, spec.clock_block.y1, spec.width, spec.height};
    }
    c.territory_seed = song_seed_spec();
    c.restrictions = {{Channel::G, Comparator::GreaterEqual, 150}};
    c.min_neighbors = min_neighbors;
    c.clock_threshold = ProjectConfig::kDefaultClockThreshold;
    c.start_year = spec.start_year;
    c.end_year = spec.start_year + static_cast<int>(spec.years()) - 1;
    c.label = "synthetic";
    for (const auto& d : spec.distractors) {
        if (d.color == kOcean) {
            c.water_region = d.region;
            c.water_seed = SeedSpec{{kOcean}, 10, 100, 255};
            break;
        }
    }
    return c;
}

BlockFrame song_block_frame(int block_width, int block_height, int gap) {
    const int w = 4 * block_width + 5 * gap;
    const int h = block_height + 2 * gap;
    BlockFrame out{RasterFrame(w, h, Rgb{0, 0, 0}), {}};
    const Rgb colors[] = {kSongDark, kSongMid, kSongPale, kOcean};
    for (int i = 0; i < 4; ++i) {
        const int x0 = gap + i * (block_width + gap);
        const Region r{x0, gap, x0 + block_width, gap + block_height};
        out.frame.fill(r, colors[i]);
        out.blocks.push_back(r);
    }
    return out;
}

RasterFrame upscale_nearest(const RasterFrame& frame, int factor) {
    if (factor < 1) {
        throw ValidationError("upscale factor must be >= 1");
    }
    RasterFrame out(frame.width() * factor, frame.height() * factor);
    for (int y = 0; y < out.height(); ++y) {
        for (int x = 0; x < out.width(); ++x) {
            out.set(x, y, frame.at(x / factor, y / factor));
        }
    }
    return out;
}

}  // namespace atde::synth
