#include "atde/raster.hpp"

#include <algorithm>
#include <string>

#include "atde/error.hpp"

namespace atde {

void validate_region(const Region& region, const char* what) {
    if (!region.valid()) {
        throw ValidationError(std::string(what) + ": degenerate rectangle [" + std::to_string(region.x0) + "," +
                              std::to_string(region.y0) + "," + std::to_string(region.x1) + "," +
                              std::to_string(region.y1) + "] (need 0 <= x0 < x1 and 0 <= y0 < y1)");
    }
}

RasterFrame::RasterFrame(int width, int height, Rgb fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
        throw ValidationError("raster dimensions must be positive");
    }
    data_.resize(pixel_count() * 3);
    for (std::size_t i = 0; i < data_.size(); i += 3) {
        data_[i] = fill.r;
        data_[i + 1] = fill.g;
        data_[i + 2] = fill.b;
    }
}

RasterFrame::RasterFrame(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width <= 0 || height <= 0) {
        throw ValidationError("raster dimensions must be positive");
    }
    if (data_.size() != pixel_count() * 3) {
        throw DimensionError("raster data holds " + std::to_string(data_.size()) + " bytes, expected " +
                             std::to_string(pixel_count() * 3));
    }
}

void RasterFrame::fill(const Region& region, Rgb c) {
    const int x0 = std::max(region.x0, 0);
    const int y0 = std::max(region.y0, 0);
    const int x1 = std::min(region.x1, width_);
    const int y1 = std::min(region.y1, height_);
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            set(x, y, c);
        }
    }
}

RasterFrame crop(const RasterFrame& frame, const Region& region) {
    if (!region.fits(frame.width(), frame.height())) {
        throw ValidationError("region [" + std::to_string(region.x0) + "," + std::to_string(region.y0) + "," +
                              std::to_string(region.x1) + "," + std::to_string(region.y1) + "] exceeds " +
                              std::to_string(frame.width()) + "x" + std::to_string(frame.height()) + " frame");
    }
    std::vector<std::uint8_t> out;
    out.reserve(region.area() * 3);
    const auto src = frame.bytes();
    const std::size_t row_bytes = static_cast<std::size_t>(region.width()) * 3;
    for (int y = region.y0; y < region.y1; ++y) {
        const std::size_t start =
            (static_cast<std::size_t>(y) * static_cast<std::size_t>(frame.width()) + static_cast<std::size_t>(region.x0)) * 3;
        out.insert(out.end(), src.begin() + static_cast<std::ptrdiff_t>(start),
                   src.begin() + static_cast<std::ptrdiff_t>(start + row_bytes));
    }
    return RasterFrame(region.width(), region.height(), std::move(out));
}

}  // namespace atde
