#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "atde/raster.hpp"

namespace atde {

struct ImageHeader {
    int width = 0;
    int height = 0;
};

/// Decodes a PNG into 8-bit RGB (palette and grey are expanded, alpha and 16-bit depth stripped).
RasterFrame read_png(const std::filesystem::path& path);
RasterFrame decode_png(const std::vector<std::uint8_t>& bytes);
ImageHeader read_png_header(const std::filesystem::path& path);

/// Deterministic encoder: fixed compression settings, no time or text chunks.
std::vector<std::uint8_t> encode_png(const RasterFrame& frame);
std::vector<std::uint8_t> encode_png_gray(int width, int height, const std::vector<std::uint8_t>& luma);

/// Writes through a temporary sibling then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const void* data, std::size_t size);
void write_file_atomic(const std::filesystem::path& path, const std::string& text);
void write_png(const std::filesystem::path& path, const RasterFrame& frame);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

/// `frame_000042.png` style names.
std::string indexed_name(const char* prefix, std::size_t index, const char* extension = ".png");

}  // namespace atde
