#ifndef REHAZE_PNG_IO_HPP
#define REHAZE_PNG_IO_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rehaze/image.hpp"

namespace rehaze::png {

/// Decoded PNG samples before any conversion to floating point.
struct RawImage {
    int height = 0;
    int width = 0;
    int channels = 0;   // 1 gray, 2 gray+alpha, 3 RGB, 4 RGBA
    int bit_depth = 8;  // 8 or 16
    std::vector<std::uint16_t> samples;

    double max_value() const { return bit_depth == 16 ? 65535.0 : 255.0; }
};

RawImage read(const std::filesystem::path& path);
void write(const std::filesystem::path& path, const RawImage& raw);

/// Any 8/16-bit PNG as RGB in [0,1]. Gray is replicated, alpha dropped.
Image load_rgb(const std::filesystem::path& path);

/// 8-bit RGB, round-half-up quantization of the clamped value.
void save_rgb8(const std::filesystem::path& path, const Image& image);

/// 16-bit grayscale, values in [0,1] scaled to 0..65535.
void save_gray16(const std::filesystem::path& path, const Plane& plane);

std::uint8_t quantize8(double v);

/// The image as it would read back after save_rgb8 -> load_rgb.
Image quantize_rgb8(const Image& image);

}  // namespace rehaze::png

#endif  // REHAZE_PNG_IO_HPP
