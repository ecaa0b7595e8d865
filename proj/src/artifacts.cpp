#include "atde/artifacts.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "atde/error.hpp"

namespace atde {

using nlohmann::json;

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, res.ptr};
}

std::string scores_csv(const ClockSeries& series) {
    std::string out = "t,score\n";
    for (std::size_t i = 0; i < series.scores.size(); ++i) {
        out += std::to_string(i + 1) + "," + std::to_string(series.scores[i]) + "\n";
    }
    return out;
}

std::string changepoints_csv(const ClockSeries& series) {
    std::string out = "t\n";
    for (const auto t : series.change_points) {
        out += std::to_string(t) + "\n";
    }
    return out;
}

std::string histogram_csv(const std::vector<HistogramBin>& bins) {
    std::string out = "bin_lo,bin_hi,count\n";
    for (const auto& b : bins) {
        out += format_number(b.lo) + "," + format_number(b.hi) + "," + std::to_string(b.count) + "\n";
    }
    return out;
}

std::string year_index_csv(const YearIndex& index) {
    std::string out = "year,frame\n";
    for (const auto& e : index.entries) {
        out += std::to_string(e.year) + "," + std::to_string(e.frame) + "\n";
    }
    return out;
}

std::string series_csv(const YearSeries& series) {
    std::string out = "year,count\n";
    for (const auto& e : series.entries) {
        out += std::to_string(e.year) + "," + format_number(e.value) + "\n";
    }
    return out;
}

std::string series_json(const YearSeries& series) {
    // Hand-written so integral counts print without a trailing ".0".
    std::string out = "{\"label\":" + json(series.label).dump() + ",\"entries\":[";
    for (std::size_t i = 0; i < series.entries.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += "[" + std::to_string(series.entries[i].year) + "," + format_number(series.entries[i].value) + "]";
    }
    out += "],\"scale_factor\":";
    out += series.scale_factor ? format_number(*series.scale_factor) : "null";
    out += ",\"normalized\":";
    out += series.normalized ? "true" : "false";
    out += "}\n";
    return out;
}

YearSeries parse_series_json(const std::string& document) {
    YearSeries s;
    try {
        const json doc = json::parse(document);
        s.label = doc.at("label").get<std::string>();
        for (const auto& e : doc.at("entries")) {
            if (!e.is_array() || e.size() != 2) {
                throw ValidationError("series entries must be [year, value] pairs");
            }
            s.entries.push_back({e[0].get<int>(), e[1].get<double>()});
        }
        if (doc.contains("scale_factor") && !doc["scale_factor"].is_null()) {
            s.scale_factor = doc["scale_factor"].get<double>();
        }
        s.normalized = doc.value("normalized", false);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("series document: ") + e.what());
    }
    validate_series(s);
    return s;
}

std::string scales_csv(const std::vector<ScaleRecord>& records) {
    std::string out = "label,water_pixels,factor\n";
    for (const auto& r : records) {
        out += r.label + "," + std::to_string(r.water_pixels) + "," + format_number(r.factor) + "\n";
    }
    return out;
}

std::vector<ScaleRecord> parse_scales_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<ScaleRecord> out;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (header) {
            header = false;
            if (line != "label,water_pixels,factor") {
                throw ValidationError("scales file must start with 'label,water_pixels,factor'");
            }
            continue;
        }
        const auto c1 = line.rfind(',');
        const auto c0 = c1 == std::string::npos ? std::string::npos : line.rfind(',', c1 - 1);
        if (c0 == std::string::npos) {
            throw ValidationError("malformed scales row: " + line);
        }
        ScaleRecord r;
        r.label = line.substr(0, c0);
        const std::string pixels = line.substr(c0 + 1, c1 - c0 - 1);
        if (!pixels.empty()) {
            r.water_pixels = std::stoull(pixels);
        }
        r.factor = std::stod(line.substr(c1 + 1));
        out.push_back(std::move(r));
    }
    return out;
}

std::string slugify(const std::string& label) {
    std::string out;
    for (const char c : label) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
        out += keep ? c : '_';
    }
    return out.empty() ? "series" : out;
}

}  // namespace atde
