#include "rehaze/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>

namespace rehaze::png {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    return f;
}

void silent_warning(png_structp, png_const_charp) {}

}  // namespace

RawImage read(const std::filesystem::path& path) {
    FilePtr file = open_file(path, "rb");
    unsigned char signature[8];
    if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
        throw IoError("'" + path.string() + "' is not a PNG file");
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, silent_warning);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng initialization failed");
    }

    RawImage raw;
    std::vector<png_bytep> rows;
    std::vector<unsigned char> buffer;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode '" + path.string() + "'");
    }

    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);
    png_set_expand(png);
    png_read_update_info(png, info);

    raw.width = static_cast<int>(png_get_image_width(png, info));
    raw.height = static_cast<int>(png_get_image_height(png, info));
    raw.channels = png_get_channels(png, info);
    raw.bit_depth = png_get_bit_depth(png, info);
    const std::size_t row_bytes = png_get_rowbytes(png, info);

    buffer.resize(row_bytes * static_cast<std::size_t>(raw.height));
    rows.resize(static_cast<std::size_t>(raw.height));
    for (int y = 0; y < raw.height; ++y) {
        rows[static_cast<std::size_t>(y)] = buffer.data() + row_bytes * static_cast<std::size_t>(y);
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    const std::size_t n = static_cast<std::size_t>(raw.height) * static_cast<std::size_t>(raw.width) *
                          static_cast<std::size_t>(raw.channels);
    raw.samples.resize(n);
    if (raw.bit_depth == 16) {
        for (std::size_t i = 0; i < n; ++i) {
            raw.samples[i] = static_cast<std::uint16_t>((buffer[2 * i] << 8) | buffer[2 * i + 1]);
        }
    } else {
        std::copy(buffer.begin(), buffer.begin() + static_cast<std::ptrdiff_t>(n), raw.samples.begin());
    }
    return raw;
}

void write(const std::filesystem::path& path, const RawImage& raw) {
    if (raw.height <= 0 || raw.width <= 0 || raw.channels < 1 || raw.channels > 4 ||
        (raw.bit_depth != 8 && raw.bit_depth != 16)) {
        throw InvalidParameter("unsupported raw image layout for PNG output");
    }
    const std::size_t n = static_cast<std::size_t>(raw.height) * static_cast<std::size_t>(raw.width) *
                          static_cast<std::size_t>(raw.channels);
    if (raw.samples.size() != n) {
        throw InvalidParameter("raw sample count does not match its dimensions");
    }

    const int bytes_per_sample = raw.bit_depth / 8;
    std::vector<unsigned char> buffer(n * static_cast<std::size_t>(bytes_per_sample));
    for (std::size_t i = 0; i < n; ++i) {
        if (bytes_per_sample == 2) {
            buffer[2 * i] = static_cast<unsigned char>(raw.samples[i] >> 8);
            buffer[2 * i + 1] = static_cast<unsigned char>(raw.samples[i] & 0xFF);
        } else {
            buffer[i] = static_cast<unsigned char>(std::min<std::uint16_t>(raw.samples[i], 255));
        }
    }
    const std::size_t row_bytes =
        static_cast<std::size_t>(raw.width) * static_cast<std::size_t>(raw.channels * bytes_per_sample);
    std::vector<png_bytep> rows(static_cast<std::size_t>(raw.height));
    for (int y = 0; y < raw.height; ++y) {
        rows[static_cast<std::size_t>(y)] = buffer.data() + row_bytes * static_cast<std::size_t>(y);
    }

    static constexpr int color_types[] = {PNG_COLOR_TYPE_GRAY, PNG_COLOR_TYPE_GRAY_ALPHA, PNG_COLOR_TYPE_RGB,
                                          PNG_COLOR_TYPE_RGB_ALPHA};

    FilePtr file = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, silent_warning);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to encode '" + path.string() + "'");
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(raw.width), static_cast<png_uint_32>(raw.height),
                 raw.bit_depth, color_types[raw.channels - 1], PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);

    if (std::fflush(file.get()) != 0) {
        throw IoError("failed to flush '" + path.string() + "'");
    }
}

Image load_rgb(const std::filesystem::path& path) {
    const RawImage raw = read(path);
    const double scale = 1.0 / raw.max_value();
    const bool gray = raw.channels < 3;
    Image image(raw.height, raw.width);
    std::size_t i = 0;
    for (int y = 0; y < raw.height; ++y) {
        for (int x = 0; x < raw.width; ++x, i += static_cast<std::size_t>(raw.channels)) {
            for (int c = 0; c < 3; ++c) {
                image.at(y, x, c) = raw.samples[i + (gray ? 0 : static_cast<std::size_t>(c))] * scale;
            }
        }
    }
    return image;
}

std::uint8_t quantize8(double v) {
    return static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5));
}

void save_rgb8(const std::filesystem::path& path, const Image& image) {
    RawImage raw{image.height(), image.width(), 3, 8, {}};
    raw.samples.reserve(image.values().size());
    for (double v : image.values()) {
        raw.samples.push_back(quantize8(v));
    }
    write(path, raw);
}

void save_gray16(const std::filesystem::path& path, const Plane& plane) {
    RawImage raw{plane.height(), plane.width(), 1, 16, {}};
    raw.samples.reserve(plane.values().size());
    for (double v : plane.values()) {
        raw.samples.push_back(static_cast<std::uint16_t>(std::floor(std::clamp(v, 0.0, 1.0) * 65535.0 + 0.5)));
    }
    write(path, raw);
}

Image quantize_rgb8(const Image& image) {
    Image out(image.size());
    auto dst = out.values();
    auto src = image.values();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = quantize8(src[i]) * (1.0 / 255.0);
    }
    return out;
}

}  // namespace rehaze::png
