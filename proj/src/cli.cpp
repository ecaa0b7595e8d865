#include "atde/cli.hpp"

#include <unistd.h>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atde/artifacts.hpp"
#include "atde/calibration_server.hpp"
#include "atde/clock.hpp"
#include "atde/error.hpp"
#include "atde/extractor.hpp"
#include "atde/frame_source.hpp"
#include "atde/image_io.hpp"
#include "atde/plot.hpp"
#include "atde/scaling.hpp"
#include "atde/synth.hpp"

namespace fs = std::filesystem;

namespace atde {

namespace {

class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what) : Error(what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

bool use_color() {
    const char* no_color = std::getenv("ATDE_NO_COLOR");
    return (no_color == nullptr || *no_color == '\0') && ::isatty(STDERR_FILENO) != 0;
}

void report(std::ostream& err, const char* level, const char* ansi, const std::string& message) {
    if (use_color()) {
        err << "atde: " << ansi << level << "\033[0m: " << message << "\n";
    } else {
        err << "atde: " << level << ": " << message << "\n";
    }
}

struct Loaded {
    ProjectConfig config;
    fs::path dir;
};

Loaded load(const std::string& path) {
    return stage("config", [&] {
        return Loaded{load_config_file(path), fs::absolute(fs::path(path)).parent_path()};
    });
}

std::shared_ptr<FrameSource> open_source(const Loaded& l) {
    return stage("frames", [&]() -> std::shared_ptr<FrameSource> {
        return open_frame_source(resolve_frames_path(l.config, l.dir));
    });
}

Region parse_rect(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(part, &used));
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
        } catch (const std::exception&) {
            throw ValidationError("--rect expects x0,y0,x1,y1 integers, got '" + text + "'");
        }
    }
    if (v.size() != 4) {
        throw ValidationError("--rect expects x0,y0,x1,y1, got '" + text + "'");
    }
    Region r{v[0], v[1], v[2], v[3]};
    validate_region(r, "--rect");
    return r;
}

ClockSeries run_clock(const Loaded& l, const FrameSource& source, std::optional<double> threshold) {
    return stage("scan-clock", [&] {
        return scan_clock(source, l.config.clock_region, threshold.value_or(l.config.clock_threshold));
    });
}

YearIndex run_index(const Loaded& l, const ClockSeries& series, std::size_t frames, bool resample, std::ostream& err) {
    YearIndex index = stage("year-index", [&] {
        return build_year_index(series, frames, l.config.start_year, l.config.end_year, resample);
    });
    if (index.resampled) {
        report(err, "warning", "\033[33m",
               "clock intervals (" + std::to_string(series.change_points.size() + 1) + ") resampled onto " +
                   std::to_string(l.config.year_count()) + " years");
    }
    return index;
}

void copy_or_encode(const FrameSource& source, std::size_t index, const fs::path& dest) {
    if (const auto* dir = dynamic_cast<const DirectoryFrameSource*>(&source)) {
        const auto bytes = read_file_bytes(dir->path(index));
        write_file_atomic(dest, bytes.data(), bytes.size());
    } else {
        write_png(dest, source.frame(index));
    }
}

void write_series(const fs::path& dir, const YearSeries& s) {
    write_file_atomic(dir / "series.csv", series_csv(s));
    write_file_atomic(dir / "series.json", series_json(s));
}

YearSeries load_series(const std::string& path) {
    return stage("series", [&] { return parse_series_json(read_text_file(path)); });
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Extract per-year territory pixel counts from animated map frame sequences", "atde"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> config_paths;
    std::string out_dir = ".";
    std::optional<double> threshold;
    bool force_resample = false;
    std::size_t bins = 20;
    bool write_masks = false;
    std::string rect;
    std::string reference;
    std::string scales_path;
    std::vector<std::string> inputs;
    std::string title;
    std::uint64_t seed = 1;
    std::string spec_path;
    std::size_t synth_frames = 200;
    double synth_noise = 0.0;
    int serve_port = 8765;
    std::string assets;
    std::string host = "127.0.0.1";

    auto* scan = app.add_subcommand("scan-clock", "Clock-window difference scores, change points and histogram");
    scan->add_option("--config", config_path, "Project config")->required();
    scan->add_option("--out", out_dir, "Output directory");
    scan->add_option("--threshold", threshold, "Override clock_threshold");
    scan->add_option("--bins", bins, "Histogram bin count")->check(CLI::PositiveNumber);

    auto* cond = app.add_subcommand("condense", "Keep one frame per year");
    cond->add_option("--config", config_path, "Project config")->required();
    cond->add_option("--out", out_dir, "Output directory");
    cond->add_option("--threshold", threshold, "Override clock_threshold");
    cond->add_flag("--force-resample", force_resample, "Map mismatched intervals onto years by nearest rank");

    auto* extract = app.add_subcommand("extract", "Per-year pixel counts and validation frames");
    extract->add_option("--config", config_path, "Project config")->required();
    extract->add_option("--out", out_dir, "Output directory");
    extract->add_option("--threshold", threshold, "Override clock_threshold");
    extract->add_flag("--force-resample", force_resample, "Map mismatched intervals onto years by nearest rank");
    extract->add_flag("--masks", write_masks, "Also write 0/255 mask images");

    auto* scale = app.add_subcommand("scale", "Water-body scale factors across videos");
    scale->add_option("--config", config_paths, "Project config (repeat per video)")->required();
    scale->add_option("--out", out_dir, "Output directory");
    scale->add_option("--rect", rect, "Water box x0,y0,x1,y1 (overrides water_region)");
    scale->add_option("--reference", reference, "Label of the reference video (default: first)");

    auto* norm = app.add_subcommand("normalize", "Scale then divide every series by the global maximum");
    norm->add_option("inputs", inputs, "series.json files")->required();
    norm->add_option("--scales", scales_path, "scales.csv with a factor per label");
    norm->add_option("--out", out_dir, "Output directory");

    auto* plot = app.add_subcommand("plot", "SVG line chart of one or more series");
    plot->add_option("inputs", inputs, "series.json files")->required();
    plot->add_option("--out", out_dir, "Output directory");
    plot->add_option("--title", title, "Chart title");

    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic fixture with ground truth");
    synth_cmd->add_option("--out", out_dir, "Output directory")->required();
    synth_cmd->add_option("--seed", seed, "Random seed");
    synth_cmd->add_option("--spec", spec_path, "Fixture spec JSON (default: built-in dynasty fixture)");
    synth_cmd->add_option("--frames", synth_frames, "Frame count of the built-in fixture (multiple of 5)");
    synth_cmd->add_option("--noise", synth_noise, "Salt-and-pepper rate of the built-in fixture")
        ->check(CLI::Range(0.0, 1.0));

    auto* calib = app.add_subcommand("calibrate", "Serve the calibration UI data endpoints");
    calib->add_option("--config", config_path, "Project config")->required();
    calib->add_option("--serve-port", serve_port, "Port (0 picks a free one)");
    calib->add_option("--assets", assets, "Directory of frontend assets");
    calib->add_option("--host", host, "Bind address");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        const fs::path outp(out_dir);
        if (*scan) {
            const Loaded l = load(config_path);
            const auto source = open_source(l);
            const ClockSeries series = run_clock(l, *source, threshold);
            const auto hist = stage("histogram", [&] { return score_histogram(series, bins); });
            stage("write", [&] {
                write_file_atomic(outp / "scores.csv", scores_csv(series));
                write_file_atomic(outp / "changepoints.csv", changepoints_csv(series));
                write_file_atomic(outp / "hist.csv", histogram_csv(hist));
            });
            out << series.change_points.size() << " change points over " << source->size() << " frames\n";
        } else if (*cond) {
            const Loaded l = load(config_path);
            const auto source = open_source(l);
            const ClockSeries series = run_clock(l, *source, threshold);
            const YearIndex index = run_index(l, series, source->size(), force_resample, err);
            stage("write", [&] {
                for (std::size_t i = 0; i < index.entries.size(); ++i) {
                    copy_or_encode(*source, index.entries[i].frame, outp / "condensed" / indexed_name("frame", i));
                }
                write_file_atomic(outp / "retained.csv", year_index_csv(index));
            });
            out << index.entries.size() << " frames retained\n";
        } else if (*extract) {
            const Loaded l = load(config_path);
            const auto source = open_source(l);
            const ClockSeries series = run_clock(l, *source, threshold);
            const YearIndex index = run_index(l, series, source->size(), force_resample, err);
            const FrameProcessor processor = stage("segmentation", [&] { return FrameProcessor(l.config); });
            for (const auto& w : processor.warnings()) {
                report(err, "warning", "\033[33m", w);
            }
            const Rgb mean = mean_seed_color(l.config.territory_seed);
            YearSeries result;
            result.label = l.config.label;
            for (std::size_t i = 0; i < index.entries.size(); ++i) {
                const auto& e = index.entries[i];
                const RasterFrame frame = stage("frames", [&] { return source->frame(e.frame); });
                const FrameResult r = stage("segmentation", [&] { return processor.process(frame); });
                result.entries.push_back({e.year, static_cast<double>(r.count)});
                stage("write", [&] {
                    write_png(outp / "validation" / indexed_name("valid", i), render_validation_frame(r.mask, mean));
                    if (write_masks) {
                        const auto png = encode_png_gray(r.mask.width(), r.mask.height(), r.mask.to_bytes());
                        write_file_atomic(outp / "masks" / indexed_name("mask", i), png.data(), png.size());
                    }
                });
            }
            stage("write", [&] { write_series(outp, result); });
            out << result.entries.size() << " years extracted\n";
        } else if (*scale) {
            std::vector<std::pair<std::string, std::size_t>> counts;
            for (const auto& path : config_paths) {
                const Loaded l = load(path);
                const auto source = open_source(l);
                const std::size_t pixels = stage("water-count", [&] {
                    if (!l.config.water_seed) {
                        throw ValidationError(path + ": water_seed is not configured");
                    }
                    const Region box = rect.empty() ? l.config.water_region.value_or(Region{}) : parse_rect(rect);
                    if (!box.valid()) {
                        throw ValidationError(path + ": no water_region configured and no --rect given");
                    }
                    return count_water_pixels(source->frame(l.config.water_frame), box, *l.config.water_seed);
                });
                counts.emplace_back(l.config.label, pixels);
            }
            const auto records = stage("scale", [&] {
                return scale_records(counts, reference.empty() ? counts.front().first : reference);
            });
            stage("write", [&] { write_file_atomic(outp / "scales.csv", scales_csv(records)); });
            out << records.size() << " scale factors written\n";
        } else if (*norm) {
            std::map<std::string, double> factors;
            if (!scales_path.empty()) {
                for (const auto& r : stage("scales", [&] { return parse_scales_csv(read_text_file(scales_path)); })) {
                    factors[r.label] = r.factor;
                }
            }
            std::vector<YearSeries> collection;
            for (const auto& path : inputs) {
                YearSeries s = load_series(path);
                if (!s.scale_factor) {
                    const auto it = factors.find(s.label);
                    if (it == factors.end()) {
                        throw StageError("scale", "series '" + s.label + "' (" + path +
                                                      ") is unscaled and has no factor in --scales");
                    }
                    s = stage("scale", [&] { return apply_scale(s, it->second); });
                }
                collection.push_back(std::move(s));
            }
            const auto normalized = stage("normalize", [&] { return relative_normalize(collection); });
            stage("write", [&] {
                std::map<std::string, int> used;
                for (const auto& s : normalized) {
                    std::string slug = slugify(s.label);
                    if (const int n = used[slug]++; n > 0) {
                        slug += "_" + std::to_string(n);
                    }
                    write_series(outp / slug, s);
                }
            });
            out << normalized.size() << " series normalised\n";
        } else if (*plot) {
            std::vector<YearSeries> collection;
            for (const auto& path : inputs) {
                collection.push_back(load_series(path));
            }
            PlotStyle style;
            style.title = title;
            const std::string svg = stage("plot", [&] { return emit_plot(collection, style); });
            stage("write", [&] { write_file_atomic(outp / "plot.svg", svg); });
            out << "plot.svg written\n";
        } else if (*synth_cmd) {
            const synth::FixtureSpec spec = stage("synth", [&] {
                return spec_path.empty() ? synth::dynasty_fixture_spec(synth_frames, synth_noise)
                                         : synth::fixture_spec_from_json(read_text_file(spec_path));
            });
            const synth::FixtureRenderer renderer = stage("synth", [&] { return synth::FixtureRenderer(spec, seed); });
            stage("write", [&] {
                synth::write_fixture(renderer, outp);
                const int min_neighbors = spec.noise_rate > 0.0 ? ProjectConfig::kDefaultMinNeighbors : 0;
                write_file_atomic(outp / "config.json", serialize_config(synth::fixture_config(spec, "frames", min_neighbors)));
            });
            out << renderer.frame_count() << " frames written\n";
        } else if (*calib) {
            const Loaded l = load(config_path);
            const auto source = open_source(l);
            CalibrationServer server(l.config, source, assets);
            const int port = stage("serve", [&] { return server.bind(host, serve_port); });
            out << "serving calibration UI on http://" << host << ":" << port << "/\n" << std::flush;
            server.serve();
        }
    } catch (const StageError& e) {
        report(err, "error", "\033[31m", "[" + e.stage() + "] " + e.what());
        return 1;
    } catch (const std::exception& e) {
        report(err, "error", "\033[31m", e.what());
        return 1;
    }
    return 0;
}

}  // namespace atde
