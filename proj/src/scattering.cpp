#include "rehaze/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rehaze {

std::string to_string(SceneKind kind) {
    return kind == SceneKind::indoor ? "indoor" : "outdoor";
}

SceneKind parse_scene_kind(const std::string& text) {
    if (text == "indoor") {
        return SceneKind::indoor;
    }
    if (text == "outdoor") {
        return SceneKind::outdoor;
    }
    throw InvalidParameter("unknown scene profile '" + text + "' (expected indoor|outdoor)");
}

void validate(const SceneProfile& profile) {
    const auto finite = [](const Range& r) { return std::isfinite(r.min) && std::isfinite(r.max); };
    if (!finite(profile.a_range) || profile.a_range.min < 0.0 || profile.a_range.min > profile.a_range.max ||
        profile.a_range.max > 1.0) {
        throw InvalidParameter("airlight range must satisfy 0 <= min <= max <= 1");
    }
    for (const Range* r : {&profile.beta_range, &profile.delta_beta_range}) {
        if (!finite(*r) || r->min <= 0.0 || r->min > r->max) {
            throw InvalidParameter("scattering ranges must satisfy 0 < min <= max");
        }
    }
}

namespace detail {

void require_depth(const DepthMap& depth) {
    if (depth.empty()) {
        throw InvalidParameter("depth map is empty");
    }
    require_values_in(depth.values(), 0.0, 1.0, "depth");
}

void require_rate(double rate, const char* what) {
    if (!std::isfinite(rate) || rate < 0.0) {
        throw InvalidParameter(std::string(what) + " must be finite and >= 0");
    }
}

}  // namespace detail

TransmissionMap transmission(const DepthMap& depth, double beta) {
    detail::require_rate(beta, "beta");
    detail::require_depth(depth);
    TransmissionMap t(depth.size());
    auto out = t.values();
    auto in = depth.values();
    constexpr double floor = std::numeric_limits<double>::min();
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = std::max(std::exp(-beta * in[i]), floor);
    }
    return t;
}

Image synthesize_haze(const Image& clean, const TransmissionMap& t, const Airlight& airlight) {
    require_same_size(clean.size(), t.size(), "synthesize_haze");
    require_valid(airlight);
    require_values_in(clean.values(), 0.0, 1.0, "clean image");
    require_values_in(t.values(), 0.0, 1.0, "transmission");

    Image hazy(clean.size());
    for (int y = 0; y < clean.height(); ++y) {
        for (int x = 0; x < clean.width(); ++x) {
            const double tx = t.at(y, x);
            for (int c = 0; c < 3; ++c) {
                const double v = clean.at(y, x, c) * tx + airlight[c] * (1.0 - tx);
                hazy.at(y, x, c) = std::clamp(v, 0.0, 1.0);
            }
        }
    }
    return hazy;
}

Image invert_asm(const Image& hazy, const TransmissionMap& t, const Airlight& airlight, double t_min) {
    require_same_size(hazy.size(), t.size(), "invert_asm");
    require_valid(airlight);
    if (!(t_min > 0.0 && t_min <= 1.0)) {
        throw InvalidParameter("t_min must lie in (0, 1]");
    }

    Image clean(hazy.size());
    for (int y = 0; y < hazy.height(); ++y) {
        for (int x = 0; x < hazy.width(); ++x) {
            const double tx = t.at(y, x);
            const double denom = std::max(tx, t_min);
            for (int c = 0; c < 3; ++c) {
                const double v = (hazy.at(y, x, c) - airlight[c] * (1.0 - tx)) / denom;
                clean.at(y, x, c) = std::clamp(v, 0.0, 1.0);
            }
        }
    }
    return clean;
}

HazeParams sample_haze_params(const SceneProfile& profile, Rng& rng) {
    validate(profile);
    HazeParams params;
    params.beta = rng.uniform(profile.beta_range.min, profile.beta_range.max);
    params.airlight = Airlight::gray(rng.uniform(profile.a_range.min, profile.a_range.max));
    return params;
}

}  // namespace rehaze
