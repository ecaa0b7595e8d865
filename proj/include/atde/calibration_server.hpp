#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "atde/config.hpp"
#include "atde/frame_source.hpp"

namespace httplib {
class Server;
}

namespace atde {

/// Localhost data service for the calibration frontend:
///   GET  /api/meta          {"frames": n, "width": w, "height": h}
///   GET  /api/frame/{i}     lossless PNG of frame i (404 past the end)
///   GET  /api/clock-scores  scores.csv over the configured clock window
///   POST /api/config        {"ok": bool, "errors": [...]} from the config loader
/// Static frontend assets, when given, are served from `/`.
class CalibrationServer {
public:
    CalibrationServer(ProjectConfig config, std::shared_ptr<const FrameSource> source,
                      std::filesystem::path assets_dir = {});
    ~CalibrationServer();
    CalibrationServer(const CalibrationServer&) = delete;
    CalibrationServer& operator=(const CalibrationServer&) = delete;

    /// Binds to `host:port` (port 0 picks a free one) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Serves until stop() is called. Requires a prior bind().
    void serve();
    void stop();
    void wait_until_ready() const;

    std::string meta_json() const;
    std::string clock_scores_csv();
    static std::string validate_config_document(const std::string& body);

private:
    void install_routes();

    ProjectConfig config_;
    std::shared_ptr<const FrameSource> source_;
    std::filesystem::path assets_dir_;
    std::unique_ptr<httplib::Server> server_;
    std::mutex scores_mutex_;
    std::optional<std::string> scores_csv_;
};

}  // namespace atde
