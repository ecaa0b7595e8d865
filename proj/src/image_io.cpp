#include "atde/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "atde/error.hpp"

namespace atde {

namespace {

struct ReadBuffer {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

void read_from_buffer(png_structp png, png_bytep out, png_size_t length) {
    auto* buf = static_cast<ReadBuffer*>(png_get_io_ptr(png));
    if (buf->pos + length > buf->size) {
        png_error(png, "truncated PNG stream");
    }
    std::memcpy(out, buf->data + buf->pos, length);
    buf->pos += length;
}

void write_to_vector(png_structp png, png_bytep data, png_size_t length) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + length);
}

void flush_noop(png_structp) {}

[[noreturn]] void raise_png_error(png_structp, png_const_charp message) { throw Error(std::string("png: ") + message); }

void warn_noop(png_structp, png_const_charp) {}

class PngReader {
public:
    PngReader() {
        png_ = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, raise_png_error, warn_noop);
        if (png_ == nullptr) {
            throw Error("png: cannot allocate reader");
        }
        info_ = png_create_info_struct(png_);
        if (info_ == nullptr) {
            png_destroy_read_struct(&png_, nullptr, nullptr);
            throw Error("png: cannot allocate info");
        }
    }
    ~PngReader() { png_destroy_read_struct(&png_, &info_, nullptr); }
    PngReader(const PngReader&) = delete;
    PngReader& operator=(const PngReader&) = delete;

    RasterFrame decode(const std::uint8_t* data, std::size_t size, bool header_only, ImageHeader* header) {
        if (size < 8 || png_sig_cmp(data, 0, 8) != 0) {
            throw Error("png: not a PNG stream");
        }
        ReadBuffer buf{data, size, 0};
        png_set_read_fn(png_, &buf, read_from_buffer);
        png_read_info(png_, info_);
        const auto width = png_get_image_width(png_, info_);
        const auto height = png_get_image_height(png_, info_);
        if (header != nullptr) {
            header->width = static_cast<int>(width);
            header->height = static_cast<int>(height);
        }
        if (header_only) {
            return {};
        }
        const int color_type = png_get_color_type(png_, info_);
        const int bit_depth = png_get_bit_depth(png_, info_);
        if (bit_depth == 16) {
            png_set_strip_16(png_);
        }
        if (color_type == PNG_COLOR_TYPE_PALETTE) {
            png_set_palette_to_rgb(png_);
        }
        if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
            if (bit_depth < 8) {
                png_set_expand_gray_1_2_4_to_8(png_);
            }
            png_set_gray_to_rgb(png_);
        }
        if (color_type & PNG_COLOR_MASK_ALPHA) {
            png_set_strip_alpha(png_);
        }
        if (png_get_valid(png_, info_, PNG_INFO_tRNS)) {
            png_set_tRNS_to_alpha(png_);
            png_set_strip_alpha(png_);
        }
        png_set_interlace_handling(png_);
        png_read_update_info(png_, info_);
        if (png_get_rowbytes(png_, info_) != static_cast<png_size_t>(width) * 3) {
            throw Error("png: unsupported pixel layout");
        }
        std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height * 3);
        std::vector<png_bytep> rows(height);
        for (png_uint_32 y = 0; y < height; ++y) {
            rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * 3;
        }
        png_read_image(png_, rows.data());
        png_read_end(png_, nullptr);
        return RasterFrame(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
    }

private:
    png_structp png_ = nullptr;
    png_infop info_ = nullptr;
};

std::vector<std::uint8_t> encode(int width, int height, int color_type, const std::uint8_t* pixels, int channels) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, raise_png_error, warn_noop);
    if (png == nullptr) {
        throw Error("png: cannot allocate writer");
    }
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("png: cannot allocate info");
    }
    std::vector<std::uint8_t> out;
    try {
        png_set_write_fn(png, &out, write_to_vector, flush_noop);
        png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, color_type,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_set_compression_level(png, 6);
        png_write_info(png, info);
        const std::size_t stride = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
        for (int y = 0; y < height; ++y) {
            png_write_row(png, const_cast<png_bytep>(pixels + static_cast<std::size_t>(y) * stride));
        }
        png_write_end(png, nullptr);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
    png_destroy_write_struct(&png, &info);
    return out;
}

}  // namespace

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RasterFrame decode_png(const std::vector<std::uint8_t>& bytes) {
    PngReader reader;
    return reader.decode(bytes.data(), bytes.size(), false, nullptr);
}

RasterFrame read_png(const std::filesystem::path& path) {
    try {
        return decode_png(read_file_bytes(path));
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

ImageHeader read_png_header(const std::filesystem::path& path) {
    // IHDR sits in the first 33 bytes.
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::vector<std::uint8_t> head(64);
    in.read(reinterpret_cast<char*>(head.data()), static_cast<std::streamsize>(head.size()));
    head.resize(static_cast<std::size_t>(in.gcount()));
    ImageHeader header;
    PngReader reader;
    try {
        reader.decode(head.data(), head.size(), true, &header);
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
    return header;
}

std::vector<std::uint8_t> encode_png(const RasterFrame& frame) {
    return encode(frame.width(), frame.height(), PNG_COLOR_TYPE_RGB, frame.bytes().data(), 3);
}

std::vector<std::uint8_t> encode_png_gray(int width, int height, const std::vector<std::uint8_t>& luma) {
    if (luma.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw DimensionError("grey image buffer does not match its dimensions");
    }
    return encode(width, height, PNG_COLOR_TYPE_GRAY, luma.data(), 1);
}

void write_file_atomic(const std::filesystem::path& path, const void* data, std::size_t size) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
        if (!out) {
            throw Error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
    write_file_atomic(path, text.data(), text.size());
}

void write_png(const std::filesystem::path& path, const RasterFrame& frame) {
    const auto bytes = encode_png(frame);
    write_file_atomic(path, bytes.data(), bytes.size());
}

std::string indexed_name(const char* prefix, std::size_t index, const char* extension) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%06zu%s", prefix, index, extension);
    return buf;
}

}  // namespace atde
