#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <vector>

#include "atde/raster.hpp"

namespace atde {

/// Random-access, ordered sequence of equally sized frames.
class FrameSource {
public:
    virtual ~FrameSource() = default;

    virtual std::size_t size() const = 0;
    virtual int width() const = 0;
    virtual int height() const = 0;
    /// Throws SourceError for an index past the end or an unreadable frame.
    virtual RasterFrame frame(std::size_t index) const = 0;
};

/// `frame_%06d.png` files, contiguous from 000000. Dimensions are checked for every file
/// when the source is opened; pixel data is decoded on demand.
class DirectoryFrameSource final : public FrameSource {
public:
    explicit DirectoryFrameSource(std::filesystem::path directory);

    std::size_t size() const override { return files_.size(); }
    int width() const override { return width_; }
    int height() const override { return height_; }
    RasterFrame frame(std::size_t index) const override;

    const std::filesystem::path& path(std::size_t index) const { return files_.at(index); }
    const std::filesystem::path& directory() const noexcept { return directory_; }

private:
    std::filesystem::path directory_;
    std::vector<std::filesystem::path> files_;
    int width_ = 0;
    int height_ = 0;
};

class MemoryFrameSource final : public FrameSource {
public:
    explicit MemoryFrameSource(std::vector<RasterFrame> frames);

    std::size_t size() const override { return frames_.size(); }
    int width() const override { return frames_.empty() ? 0 : frames_.front().width(); }
    int height() const override { return frames_.empty() ? 0 : frames_.front().height(); }
    RasterFrame frame(std::size_t index) const override;

    const std::vector<RasterFrame>& frames() const noexcept { return frames_; }

private:
    std::vector<RasterFrame> frames_;
};

std::unique_ptr<FrameSource> open_frame_source(const std::filesystem::path& directory);

/// Writes frames as `frame_%06d.png` into `directory` (created if needed).
void write_frame_directory(const std::filesystem::path& directory, const std::vector<RasterFrame>& frames,
                           const char* prefix = "frame");

}  // namespace atde
