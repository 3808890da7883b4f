#include "rehaze/dcp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace rehaze::dcp {
namespace {

void require_patch(int patch) {
    if (patch < 1 || patch % 2 == 0) {
        throw InvalidParameter("patch size must be odd and >= 1, got " + std::to_string(patch));
    }
}

// Rectangular min filters are separable: rows first, then columns.
Plane min_filter(const Plane& in, int patch) {
    const int r = patch / 2;
    const int h = in.height();
    const int w = in.width();
    Plane rows(in.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double m = in.at(y, x);
            for (int k = -r; k <= r; ++k) {
                m = std::min(m, in.at(y, std::clamp(x + k, 0, w - 1)));
            }
            rows.at(y, x) = m;
        }
    }
    Plane out(in.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double m = rows.at(y, x);
            for (int k = -r; k <= r; ++k) {
                m = std::min(m, rows.at(std::clamp(y + k, 0, h - 1), x));
            }
            out.at(y, x) = m;
        }
    }
    return out;
}

Plane channel_min(const Image& image, const Airlight& scale) {
    Plane out(image.size());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            out.at(y, x) = std::min({image.at(y, x, 0) / scale[0], image.at(y, x, 1) / scale[1],
                                     image.at(y, x, 2) / scale[2]});
        }
    }
    return out;
}

}  // namespace

Plane dark_channel(const Image& image, int patch) {
    require_patch(patch);
    require_values_in(image.values(), 0.0, 1.0, "dark_channel input");
    return min_filter(channel_min(image, Airlight::gray(1.0)), patch);
}

Airlight estimate_airlight(const Image& image, int patch, double top_fraction) {
    if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
        throw InvalidParameter("top_fraction must lie in (0, 1]");
    }
    const Plane dark = dark_channel(image, patch);
    const auto values = dark.values();
    const std::size_t n = values.size();
    const auto count = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(top_fraction * static_cast<double>(n))), 1, n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          return values[a] != values[b] ? values[a] > values[b] : a < b;
                      });

    std::array<double, 3> sum{0.0, 0.0, 0.0};
    const auto pixels = image.values();
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            sum[c] += pixels[order[i] * 3 + c];
        }
    }
    Airlight airlight;
    for (std::size_t c = 0; c < 3; ++c) {
        airlight.rgb[c] = std::clamp(sum[c] / static_cast<double>(count), 0.0, 1.0);
    }
    return airlight;
}

TransmissionMap dcp_transmission(const Image& image, const Airlight& airlight, int patch, double omega) {
    require_patch(patch);
    require_valid(airlight);
    if (!(omega >= 0.0 && omega <= 1.0)) {
        throw InvalidParameter("omega must lie in [0, 1]");
    }
    for (double a : airlight.rgb) {
        if (a <= 0.0) {
            throw InvalidParameter("airlight channel is zero; cannot normalize by it");
        }
    }
    require_values_in(image.values(), 0.0, 1.0, "dcp_transmission input");

    const Plane dark = min_filter(channel_min(image, airlight), patch);
    TransmissionMap t(image.size());
    auto out = t.values();
    auto in = dark.values();
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = std::clamp(1.0 - omega * in[i], kInversionTMin, 1.0);
    }
    return t;
}

Image dcp_dehaze(const Image& image, const Options& options, Airlight& estimated) {
    estimated = estimate_airlight(image, options.patch, options.top_fraction);
    const TransmissionMap t = dcp_transmission(image, estimated, options.patch, options.omega);
    return invert_asm(image, t, estimated);
}

Image dcp_dehaze(const Image& image, const Options& options) {
    Airlight ignored;
    return dcp_dehaze(image, options, ignored);
}

}  // namespace rehaze::dcp
