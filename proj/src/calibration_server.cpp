#include "atde/calibration_server.hpp"

#include <httplib.h>
#include <json.hpp>

#include "atde/artifacts.hpp"
#include "atde/clock.hpp"
#include "atde/error.hpp"
#include "atde/image_io.hpp"

namespace atde {

using nlohmann::json;

namespace {

constexpr const char* kPlaceholderPage =
    "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>atde calibrate</title></head>\n"
    "<body><p>Calibration frontend assets are not installed. Pass --assets DIR to serve them.</p>\n"
    "<p>Data endpoints: /api/meta, /api/frame/{i}, /api/clock-scores, POST /api/config.</p></body></html>\n";

}  // namespace

CalibrationServer::CalibrationServer(ProjectConfig config, std::shared_ptr<const FrameSource> source,
                                     std::filesystem::path assets_dir)
    : config_(std::move(config)), source_(std::move(source)), assets_dir_(std::move(assets_dir)),
      server_(std::make_unique<httplib::Server>()) {
    if (!source_) {
        throw Error("calibration server needs a frame source");
    }
    install_routes();
}

CalibrationServer::~CalibrationServer() { stop(); }

std::string CalibrationServer::meta_json() const {
    return json{{"frames", source_->size()}, {"width", source_->width()}, {"height", source_->height()}}.dump();
}

std::string CalibrationServer::clock_scores_csv() {
    std::lock_guard lock(scores_mutex_);
    if (!scores_csv_) {
        scores_csv_ = scores_csv(scan_clock(*source_, config_.clock_region, config_.clock_threshold));
    }
    return *scores_csv_;
}

std::string CalibrationServer::validate_config_document(const std::string& body) {
    json result{{"ok", true}, {"errors", json::array()}};
    try {
        (void)load_config(body);
    } catch (const Error& e) {
        result["ok"] = false;
        result["errors"].push_back(e.what());
    }
    return result.dump();
}

void CalibrationServer::install_routes() {
    auto& srv = *server_;
    srv.Get("/api/meta", [this](const httplib::Request&, httplib::Response& res) {
        res.set_content(meta_json(), "application/json");
    });
    srv.Get(R"(/api/frame/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
        const std::size_t index = std::stoull(req.matches[1].str());
        if (index >= source_->size()) {
            res.status = 404;
            res.set_content(json{{"error", "frame " + std::to_string(index) + " not found"}}.dump(), "application/json");
            return;
        }
        std::vector<std::uint8_t> png;
        if (const auto* dir = dynamic_cast<const DirectoryFrameSource*>(source_.get())) {
            png = read_file_bytes(dir->path(index));
        } else {
            png = encode_png(source_->frame(index));
        }
        res.set_content(std::string(png.begin(), png.end()), "image/png");
    });
    srv.Get("/api/clock-scores", [this](const httplib::Request&, httplib::Response& res) {
        try {
            res.set_content(clock_scores_csv(), "text/csv");
        } catch (const Error& e) {
            res.status = 409;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        }
    });
    srv.Post("/api/config", [](const httplib::Request& req, httplib::Response& res) {
        res.set_content(validate_config_document(req.body), "application/json");
    });
    if (!assets_dir_.empty() && std::filesystem::is_directory(assets_dir_)) {
        srv.set_mount_point("/", assets_dir_.string());
    } else {
        srv.Get("/", [](const httplib::Request&, httplib::Response& res) { res.set_content(kPlaceholderPage, "text/html"); });
    }
}

int CalibrationServer::bind(const std::string& host, int port) {
    if (port == 0) {
        const int bound = server_->bind_to_any_port(host);
        if (bound < 0) {
            throw Error("cannot bind calibration server on " + host);
        }
        return bound;
    }
    if (!server_->bind_to_port(host, port)) {
        throw Error("cannot bind calibration server on " + host + ":" + std::to_string(port));
    }
    return port;
}

void CalibrationServer::serve() { server_->listen_after_bind(); }

void CalibrationServer::stop() {
    if (server_) {
        server_->stop();
    }
}

void CalibrationServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace atde
