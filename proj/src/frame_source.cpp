#include "atde/frame_source.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <string>

#include "atde/error.hpp"
#include "atde/image_io.hpp"

namespace atde {

namespace {

// Parses "frame_NNNNNN.png"; anything else is ignored.
bool parse_frame_name(const std::string& name, std::size_t& index) {
    constexpr std::string_view prefix = "frame_";
    constexpr std::string_view suffix = ".png";
    if (name.size() != prefix.size() + 6 + suffix.size() || !name.starts_with(prefix) || !name.ends_with(suffix)) {
        return false;
    }
    const char* first = name.data() + prefix.size();
    const char* last = first + 6;
    if (!std::all_of(first, last, [](char c) { return c >= '0' && c <= '9'; })) {
        return false;
    }
    return std::from_chars(first, last, index).ec == std::errc{};
}

}  // namespace

DirectoryFrameSource::DirectoryFrameSource(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::error_code ec;
    if (!std::filesystem::is_directory(directory_, ec)) {
        throw SourceError("frame directory " + directory_.string() + " does not exist");
    }
    std::map<std::size_t, std::filesystem::path> found;
    for (const auto& entry : std::filesystem::directory_iterator(directory_)) {
        std::size_t index = 0;
        if (entry.is_regular_file() && parse_frame_name(entry.path().filename().string(), index)) {
            found.emplace(index, entry.path());
        }
    }
    if (found.empty()) {
        throw SourceError("frame directory " + directory_.string() + " contains no frame_%06d.png files");
    }
    std::size_t expected = 0;
    for (auto& [index, path] : found) {
        if (index != expected) {
            throw SourceError("missing frame (sequence must be contiguous from 000000)", expected);
        }
        files_.push_back(std::move(path));
        ++expected;
    }
    for (std::size_t i = 0; i < files_.size(); ++i) {
        ImageHeader header;
        try {
            header = read_png_header(files_[i]);
        } catch (const Error& e) {
            throw SourceError(e.what(), i);
        }
        if (i == 0) {
            width_ = header.width;
            height_ = header.height;
        } else if (header.width != width_ || header.height != height_) {
            throw SourceError("dimension mismatch: " + std::to_string(header.width) + "x" +
                                  std::to_string(header.height) + " vs " + std::to_string(width_) + "x" +
                                  std::to_string(height_) + " for frame 0",
                              i);
        }
    }
}

RasterFrame DirectoryFrameSource::frame(std::size_t index) const {
    if (index >= files_.size()) {
        throw SourceError("index out of range (source holds " + std::to_string(files_.size()) + " frames)", index);
    }
    RasterFrame f;
    try {
        f = read_png(files_[index]);
    } catch (const Error& e) {
        throw SourceError(e.what(), index);
    }
    if (f.width() != width_ || f.height() != height_) {
        throw SourceError("dimension mismatch", index);
    }
    return f;
}

MemoryFrameSource::MemoryFrameSource(std::vector<RasterFrame> frames) : frames_(std::move(frames)) {
    for (std::size_t i = 1; i < frames_.size(); ++i) {
        if (frames_[i].width() != frames_[0].width() || frames_[i].height() != frames_[0].height()) {
            throw SourceError("dimension mismatch", i);
        }
    }
}

RasterFrame MemoryFrameSource::frame(std::size_t index) const {
    if (index >= frames_.size()) {
        throw SourceError("index out of range (source holds " + std::to_string(frames_.size()) + " frames)", index);
    }
    return frames_[index];
}

std::unique_ptr<FrameSource> open_frame_source(const std::filesystem::path& directory) {
    return std::make_unique<DirectoryFrameSource>(directory);
}

void write_frame_directory(const std::filesystem::path& directory, const std::vector<RasterFrame>& frames,
                           const char* prefix) {
    std::filesystem::create_directories(directory);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        write_png(directory / indexed_name(prefix, i), frames[i]);
    }
}

}  // namespace atde
