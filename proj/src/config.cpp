#include "atde/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "atde/error.hpp"

namespace atde {

using nlohmann::json;

namespace {

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ParseError(prefix + key, "unknown field");
        }
    }
}

long long get_integer(const json& v, const std::string& field) {
    if (v.is_number_integer()) {
        return v.get<long long>();
    }
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == static_cast<double>(static_cast<long long>(d))) {
            return static_cast<long long>(d);
        }
    }
    throw ParseError(field, "expected an integer");
}

int get_int_in(const json& v, const std::string& field, long long lo, long long hi) {
    const long long n = get_integer(v, field);
    if (n < lo || n > hi) {
        throw ParseError(field, "value " + std::to_string(n) + " outside [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    }
    return static_cast<int>(n);
}

Region parse_region(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 4) {
        throw ParseError(field, "expected [x0, y0, x1, y1]");
    }
    Region r{get_int_in(v[0], field + "[0]", 0, 1 << 30), get_int_in(v[1], field + "[1]", 0, 1 << 30),
             get_int_in(v[2], field + "[2]", 0, 1 << 30), get_int_in(v[3], field + "[3]", 0, 1 << 30)};
    return r;
}

std::optional<Region> parse_optional_region(const json& obj, const char* key) {
    const json* v = find(obj, key);
    if (v == nullptr || v->is_null()) {
        return std::nullopt;
    }
    return parse_region(*v, key);
}

Rgb parse_rgb(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 3) {
        throw ParseError(field, "expected [r, g, b]");
    }
    return {static_cast<std::uint8_t>(get_int_in(v[0], field + "[0]", 0, 255)),
            static_cast<std::uint8_t>(get_int_in(v[1], field + "[1]", 0, 255)),
            static_cast<std::uint8_t>(get_int_in(v[2], field + "[2]", 0, 255))};
}

SeedSpec parse_seed(const json& v, const std::string& field) {
    if (!v.is_object()) {
        throw ParseError(field, "expected an object");
    }
    reject_unknown_keys(v, {"seeds", "hsv_range", "lower_sv", "upper_sv"}, field + ".");
    SeedSpec spec;
    const json* seeds = find(v, "seeds");
    if (seeds == nullptr || !seeds->is_array()) {
        throw ParseError(field + ".seeds", "expected a list of [r, g, b]");
    }
    for (std::size_t i = 0; i < seeds->size(); ++i) {
        spec.seeds.push_back(parse_rgb((*seeds)[i], field + ".seeds[" + std::to_string(i) + "]"));
    }
    if (const json* h = find(v, "hsv_range")) {
        spec.hsv_range = get_int_in(*h, field + ".hsv_range", 0, 1 << 20);
    }
    if (const json* l = find(v, "lower_sv")) {
        spec.lower_sv = get_int_in(*l, field + ".lower_sv", 0, 255);
    }
    if (const json* u = find(v, "upper_sv")) {
        spec.upper_sv = get_int_in(*u, field + ".upper_sv", 0, 255);
    }
    return spec;
}

ChannelRestriction parse_restriction(const json& v, const std::string& field) {
    if (!v.is_object()) {
        throw ParseError(field, "expected an object");
    }
    reject_unknown_keys(v, {"channel", "op", "threshold"}, field + ".");
    ChannelRestriction r;
    const json* ch = find(v, "channel");
    if (ch == nullptr || !ch->is_string()) {
        throw ParseError(field + ".channel", "expected \"R\", \"G\" or \"B\"");
    }
    const auto name = ch->get<std::string>();
    if (name == "R") {
        r.channel = Channel::R;
    } else if (name == "G") {
        r.channel = Channel::G;
    } else if (name == "B") {
        r.channel = Channel::B;
    } else {
        throw ParseError(field + ".channel", "expected \"R\", \"G\" or \"B\", got \"" + name + "\"");
    }
    const json* op = find(v, "op");
    if (op == nullptr || !op->is_string()) {
        throw ParseError(field + ".op", "expected \">=\" or \"<\"");
    }
    const auto sym = op->get<std::string>();
    if (sym == ">=") {
        r.comparator = Comparator::GreaterEqual;
    } else if (sym == "<") {
        r.comparator = Comparator::Less;
    } else {
        throw ParseError(field + ".op", "expected \">=\" or \"<\", got \"" + sym + "\"");
    }
    const json* t = find(v, "threshold");
    if (t == nullptr) {
        throw ParseError(field + ".threshold", "missing");
    }
    r.threshold = get_int_in(*t, field + ".threshold", 0, 255);
    return r;
}

json region_json(const Region& r) { return json::array({r.x0, r.y0, r.x1, r.y1}); }

json seed_json(const SeedSpec& s) {
    json seeds = json::array();
    for (const Rgb& c : s.seeds) {
        seeds.push_back(json::array({c.r, c.g, c.b}));
    }
    json out = json::object();
    out["seeds"] = std::move(seeds);
    out["hsv_range"] = s.hsv_range;
    out["lower_sv"] = s.lower_sv;
    out["upper_sv"] = s.upper_sv;
    return out;
}

}  // namespace

char channel_name(Channel c) noexcept {
    switch (c) {
        case Channel::R: return 'R';
        case Channel::G: return 'G';
        case Channel::B: return 'B';
    }
    return '?';
}

const char* comparator_symbol(Comparator c) noexcept { return c == Comparator::GreaterEqual ? ">=" : "<"; }

void validate_seed_spec(const SeedSpec& spec, const char* what) {
    if (spec.seeds.empty()) {
        throw ValidationError(std::string(what) + ": at least one seed colour is required");
    }
    if (spec.hsv_range < 0) {
        throw ValidationError(std::string(what) + ": hsv_range must be >= 0");
    }
    if (spec.lower_sv < 0 || spec.upper_sv > 255 || spec.lower_sv > spec.upper_sv) {
        throw ValidationError(std::string(what) + ": need 0 <= lower_sv <= upper_sv <= 255");
    }
}

void validate_config(const ProjectConfig& c) {
    validate_region(c.clock_region, "clock_region");
    if (c.map_region) {
        validate_region(*c.map_region, "map_region");
    }
    if (c.water_region) {
        validate_region(*c.water_region, "water_region");
    }
    validate_seed_spec(c.territory_seed, "territory_seed");
    if (c.water_seed) {
        validate_seed_spec(*c.water_seed, "water_seed");
    }
    for (const auto& r : c.restrictions) {
        if (r.threshold < 0 || r.threshold > 255) {
            throw ValidationError("restriction threshold must lie in [0, 255]");
        }
    }
    if (c.min_neighbors < 0 || c.min_neighbors > 8) {
        throw ValidationError("min_neighbors must lie in [0, 8] (a pixel has only 8 neighbours)");
    }
    if (!(c.clock_threshold >= 0.0)) {
        throw ValidationError("clock_threshold must be non-negative");
    }
    if (c.start_year > c.end_year) {
        throw ValidationError("start_year " + std::to_string(c.start_year) + " is after end_year " +
                              std::to_string(c.end_year));
    }
}

ProjectConfig load_config(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError("<document>", e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("<document>", "expected a JSON object");
    }
    reject_unknown_keys(doc,
                        {"frames", "clock_region", "map_region", "water_region", "territory_seed", "water_seed",
                         "restrictions", "min_neighbors", "clock_threshold", "start_year", "end_year", "label",
                         "water_frame"},
                        "");

    ProjectConfig c;
    const json* frames = find(doc, "frames");
    if (frames == nullptr || !frames->is_string()) {
        throw ParseError("frames", "expected a path string");
    }
    c.frames = frames->get<std::string>();

    const json* clock = find(doc, "clock_region");
    if (clock == nullptr) {
        throw ParseError("clock_region", "missing");
    }
    c.clock_region = parse_region(*clock, "clock_region");
    c.map_region = parse_optional_region(doc, "map_region");
    c.water_region = parse_optional_region(doc, "water_region");

    const json* territory = find(doc, "territory_seed");
    if (territory == nullptr) {
        throw ParseError("territory_seed", "missing");
    }
    c.territory_seed = parse_seed(*territory, "territory_seed");
    if (const json* water = find(doc, "water_seed"); water != nullptr && !water->is_null()) {
        c.water_seed = parse_seed(*water, "water_seed");
    }

    if (const json* rs = find(doc, "restrictions"); rs != nullptr && !rs->is_null()) {
        if (!rs->is_array()) {
            throw ParseError("restrictions", "expected a list");
        }
        for (std::size_t i = 0; i < rs->size(); ++i) {
            c.restrictions.push_back(parse_restriction((*rs)[i], "restrictions[" + std::to_string(i) + "]"));
        }
    }
    if (const json* mn = find(doc, "min_neighbors")) {
        c.min_neighbors = get_int_in(*mn, "min_neighbors", -1000000, 1000000);
    }
    if (const json* t = find(doc, "clock_threshold")) {
        if (!t->is_number()) {
            throw ParseError("clock_threshold", "expected a number");
        }
        c.clock_threshold = t->get<double>();
    }
    const json* sy = find(doc, "start_year");
    if (sy == nullptr) {
        throw ParseError("start_year", "missing");
    }
    c.start_year = get_int_in(*sy, "start_year", -1000000, 1000000);
    const json* ey = find(doc, "end_year");
    if (ey == nullptr) {
        throw ParseError("end_year", "missing");
    }
    c.end_year = get_int_in(*ey, "end_year", -1000000, 1000000);
    if (const json* label = find(doc, "label"); label != nullptr && !label->is_null()) {
        if (!label->is_string()) {
            throw ParseError("label", "expected a string");
        }
        c.label = label->get<std::string>();
    }
    if (const json* wf = find(doc, "water_frame")) {
        c.water_frame = static_cast<std::size_t>(get_int_in(*wf, "water_frame", 0, 1 << 30));
    }

    validate_config(c);
    return c;
}

ProjectConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

std::string serialize_config(const ProjectConfig& c) {
    json doc = json::object();
    doc["frames"] = c.frames;
    doc["clock_region"] = region_json(c.clock_region);
    doc["map_region"] = c.map_region ? region_json(*c.map_region) : json(nullptr);
    doc["water_region"] = c.water_region ? region_json(*c.water_region) : json(nullptr);
    doc["territory_seed"] = seed_json(c.territory_seed);
    doc["water_seed"] = c.water_seed ? seed_json(*c.water_seed) : json(nullptr);
    json rs = json::array();
    for (const auto& r : c.restrictions) {
        rs.push_back({{"channel", std::string(1, channel_name(r.channel))},
                      {"op", comparator_symbol(r.comparator)},
                      {"threshold", r.threshold}});
    }
    doc["restrictions"] = std::move(rs);
    doc["min_neighbors"] = c.min_neighbors;
    doc["clock_threshold"] = c.clock_threshold;
    doc["start_year"] = c.start_year;
    doc["end_year"] = c.end_year;
    doc["label"] = c.label;
    doc["water_frame"] = c.water_frame;
    return doc.dump(2) + "\n";
}

std::filesystem::path resolve_frames_path(const ProjectConfig& config, const std::filesystem::path& config_dir) {
    std::filesystem::path p(config.frames);
    return p.is_absolute() ? p : config_dir / p;
}

}  // namespace atde
