#ifndef REHAZE_IMAGE_HPP
#define REHAZE_IMAGE_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rehaze/errors.hpp"

namespace rehaze {

struct Size {
    int height = 0;
    int width = 0;

    std::size_t pixels() const { return static_cast<std::size_t>(height) * static_cast<std::size_t>(width); }
    friend bool operator==(const Size&, const Size&) = default;
};

std::string to_string(Size size);

/// Row-major raster of doubles with interleaved channels.
template <int Channels>
class Raster {
public:
    static constexpr int channels = Channels;

    Raster() = default;
    Raster(int height, int width, double fill = 0.0) : size_{height, width} {
        if (height <= 0 || width <= 0) {
            throw InvalidParameter("raster dimensions must be positive, got " + to_string(size_));
        }
        data_.assign(size_.pixels() * Channels, fill);
    }
    explicit Raster(Size size, double fill = 0.0) : Raster(size.height, size.width, fill) {}

    int height() const { return size_.height; }
    int width() const { return size_.width; }
    Size size() const { return size_; }
    bool empty() const { return data_.empty(); }

    double& at(int y, int x, int c = 0) { return data_[index(y, x, c)]; }
    double at(int y, int x, int c = 0) const { return data_[index(y, x, c)]; }

    std::span<double> values() & { return data_; }
    std::span<const double> values() const& { return data_; }
    std::span<const double> values() && = delete;

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    std::size_t index(int y, int x, int c) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(size_.width) + static_cast<std::size_t>(x)) *
                   Channels +
               static_cast<std::size_t>(c);
    }

    Size size_{};
    std::vector<double> data_;
};

/// RGB intensities in [0,1]; sRGB-coded values are used directly as model operands.
using Image = Raster<3>;
using Plane = Raster<1>;

/// Relative scene depth normalized to [0,1].
class DepthMap : public Plane {
public:
    using Plane::Plane;
    explicit DepthMap(Plane plane) : Plane(std::move(plane)) {}
};

/// Fraction of scene radiance reaching the camera, in (0,1].
class TransmissionMap : public Plane {
public:
    using Plane::Plane;
    explicit TransmissionMap(Plane plane) : Plane(std::move(plane)) {}
};

/// Per-channel atmospheric light.
struct Airlight {
    std::array<double, 3> rgb{1.0, 1.0, 1.0};

    static Airlight gray(double value) { return Airlight{{value, value, value}}; }
    double operator[](int c) const { return rgb[static_cast<std::size_t>(c)]; }
    friend bool operator==(const Airlight&, const Airlight&) = default;
};

void require_same_size(Size a, Size b, const char* what);

/// Throws InvalidParameter when any sample is non-finite or outside [lo, hi].
void require_values_in(std::span<const double> values, double lo, double hi, const char* what);

void require_valid(const Airlight& airlight);

Image clamp01(Image image);

}  // namespace rehaze

#endif  // REHAZE_IMAGE_HPP
