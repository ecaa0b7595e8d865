#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace atde {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Axis-aligned pixel rectangle, [x0, x1) x [y0, y1).
struct Region {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    int width() const noexcept { return x1 - x0; }
    int height() const noexcept { return y1 - y0; }
    std::size_t area() const noexcept { return static_cast<std::size_t>(width()) * static_cast<std::size_t>(height()); }

    bool valid() const noexcept { return 0 <= x0 && x0 < x1 && 0 <= y0 && y0 < y1; }
    bool fits(int frame_width, int frame_height) const noexcept {
        return valid() && x1 <= frame_width && y1 <= frame_height;
    }
    bool contains(int x, int y) const noexcept { return x0 <= x && x < x1 && y0 <= y && y < y1; }
    bool contains(const Region& other) const noexcept {
        return x0 <= other.x0 && other.x1 <= x1 && y0 <= other.y0 && other.y1 <= y1;
    }

    friend bool operator==(const Region&, const Region&) = default;
};

/// Throws ValidationError unless the rectangle is non-degenerate.
void validate_region(const Region& region, const char* what);

/// Row-major 8-bit RGB image.
class RasterFrame {
public:
    RasterFrame() = default;
    RasterFrame(int width, int height, Rgb fill = {});
    RasterFrame(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    bool empty() const noexcept { return data_.empty(); }

    Rgb at(int x, int y) const noexcept {
        const std::uint8_t* p = data_.data() + offset(x, y);
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, Rgb c) noexcept {
        std::uint8_t* p = data_.data() + offset(x, y);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }

    void fill(const Region& region, Rgb c);

    std::span<const std::uint8_t> bytes() const noexcept { return data_; }
    std::span<std::uint8_t> bytes() noexcept { return data_; }

    friend bool operator==(const RasterFrame&, const RasterFrame&) = default;

private:
    std::size_t offset(int x, int y) const noexcept {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 3;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Copy of the pixels inside `region`. Throws ValidationError when it does not fit.
RasterFrame crop(const RasterFrame& frame, const Region& region);

}  // namespace atde
