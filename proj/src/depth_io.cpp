#include "rehaze/depth_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "rehaze/png_io.hpp"

namespace rehaze::depth {
namespace {

DepthMap minmax_of(const Plane& values, const char* source) {
    const auto [lo_it, hi_it] = std::minmax_element(values.values().begin(), values.values().end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) {
        throw DegenerateDepth(std::string(source) +
                              " is constant; min-max normalization is undefined, use a fixed range instead");
    }
    DepthMap out(values.size());
    auto dst = out.values();
    auto src = values.values();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = std::clamp((src[i] - lo) / (hi - lo), 0.0, 1.0);
    }
    return out;
}

}  // namespace

DepthMap normalize(const Plane& raw, const Normalization& normalization) {
    require_values_in(raw.values(), 0.0, 1.0, "raw depth");
    switch (normalization.kind) {
    case Normalization::Kind::minmax:
        return minmax_of(raw, "depth map");
    case Normalization::Kind::fixed_range: {
        const double lo = normalization.lo;
        const double hi = normalization.hi;
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
            throw InvalidParameter("fixed depth range requires finite lo < hi");
        }
        DepthMap out(raw.size());
        auto dst = out.values();
        auto src = raw.values();
        for (std::size_t i = 0; i < src.size(); ++i) {
            dst[i] = std::clamp((src[i] - lo) / (hi - lo), 0.0, 1.0);
        }
        return out;
    }
    case Normalization::Kind::inverse_then_minmax: {
        Plane reciprocal(raw.size());
        auto dst = reciprocal.values();
        auto src = raw.values();
        for (std::size_t i = 0; i < src.size(); ++i) {
            dst[i] = 1.0 / (src[i] + kInverseEpsilon);
        }
        // The reciprocal can exceed 1, so min-max is done without the range check.
        const auto [lo_it, hi_it] = std::minmax_element(dst.begin(), dst.end());
        const double lo = *lo_it;
        const double hi = *hi_it;
        if (!(hi > lo)) {
            throw DegenerateDepth("inverse depth map is constant; use a fixed range instead");
        }
        DepthMap out(raw.size());
        auto norm = out.values();
        for (std::size_t i = 0; i < dst.size(); ++i) {
            norm[i] = std::clamp((dst[i] - lo) / (hi - lo), 0.0, 1.0);
        }
        return out;
    }
    }
    throw InvalidParameter("unknown depth normalization");
}

DepthMap load_depth(const std::filesystem::path& path, const Normalization& normalization) {
    const png::RawImage raw = png::read(path);
    Plane plane(raw.height, raw.width);
    const double scale = 1.0 / raw.max_value();
    auto dst = plane.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = raw.samples[i * static_cast<std::size_t>(raw.channels)] * scale;
    }
    return normalize(plane, normalization);
}

std::optional<Sidecar> read_sidecar(const std::filesystem::path& depth_path) {
    std::filesystem::path sidecar_path = depth_path;
    sidecar_path.replace_extension(".json");
    if (!std::filesystem::exists(sidecar_path)) {
        return std::nullopt;
    }
    std::ifstream in(sidecar_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed depth sidecar '" + sidecar_path.string() + "': " + e.what());
    }
    Sidecar sidecar;
    sidecar.convention = j.value("convention", std::string("depth"));
    if (sidecar.convention != "depth" && sidecar.convention != "inverse_depth") {
        throw IoError("depth sidecar convention must be 'depth' or 'inverse_depth', got '" + sidecar.convention +
                      "'");
    }
    if (j.contains("lo")) {
        sidecar.lo = j.at("lo").get<double>();
    }
    if (j.contains("hi")) {
        sidecar.hi = j.at("hi").get<double>();
    }
    return sidecar;
}

Normalization normalization_for(const std::optional<Sidecar>& sidecar) {
    if (!sidecar) {
        return Normalization::minmax();
    }
    if (sidecar->convention == "inverse_depth") {
        return Normalization::inverse_then_minmax();
    }
    if (sidecar->lo && sidecar->hi) {
        return Normalization::fixed_range(*sidecar->lo, *sidecar->hi);
    }
    return Normalization::minmax();
}

DepthMap load_depth_auto(const std::filesystem::path& path) {
    return load_depth(path, normalization_for(read_sidecar(path)));
}

DepthMap synth_depth(const Pattern& pattern, Size size) {
    DepthMap d(size);
    const int h = size.height;
    const int w = size.width;
    switch (pattern.kind) {
    case Pattern::Kind::constant:
        if (!(pattern.value >= 0.0 && pattern.value <= 1.0)) {
            throw InvalidParameter("constant depth must lie in [0,1]");
        }
        std::fill(d.values().begin(), d.values().end(), pattern.value);
        break;
    case Pattern::Kind::ramp_horizontal:
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                d.at(y, x) = w > 1 ? static_cast<double>(x) / (w - 1) : 0.0;
            }
        }
        break;
    case Pattern::Kind::ramp_vertical:
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                d.at(y, x) = h > 1 ? static_cast<double>(y) / (h - 1) : 0.0;
            }
        }
        break;
    case Pattern::Kind::radial: {
        const double cy = 0.5 * (h - 1);
        const double cx = 0.5 * (w - 1);
        const double corner = std::hypot(cy, cx);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                d.at(y, x) = corner > 0.0 ? std::min(std::hypot(y - cy, x - cx) / corner, 1.0) : 0.0;
            }
        }
        break;
    }
    case Pattern::Kind::step: {
        const int k = pattern.levels;
        if (k < 1) {
            throw InvalidParameter("step depth needs at least one level");
        }
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const long band = static_cast<long>(x) * k / w;
                d.at(y, x) = k > 1 ? static_cast<double>(band) / (k - 1) : 0.0;
            }
        }
        break;
    }
    }
    return d;
}

double depth_l1(const DepthMap& a, const DepthMap& b) {
    require_same_size(a.size(), b.size(), "depth_l1");
    double sum = 0.0;
    auto va = a.values();
    auto vb = b.values();
    for (std::size_t i = 0; i < va.size(); ++i) {
        sum += std::abs(va[i] - vb[i]);
    }
    return sum / static_cast<double>(va.size());
}

}  // namespace rehaze::depth
