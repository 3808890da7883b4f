#include "rehaze/rehazy.hpp"

#include <algorithm>
#include <cmath>

namespace rehaze {

TransmissionMap delta_transmission(const DepthMap& depth, double delta_beta) {
    return transmission(depth, delta_beta);
}

Image generate_rehazy(const Image& hazy, const DepthMap& depth, const Airlight& airlight, double delta_beta) {
    require_same_size(hazy.size(), depth.size(), "generate_rehazy");
    require_valid(airlight);
    require_values_in(hazy.values(), 0.0, 1.0, "hazy image");
    const TransmissionMap dt = delta_transmission(depth, delta_beta);

    Image out(hazy.size());
    for (int y = 0; y < hazy.height(); ++y) {
        for (int x = 0; x < hazy.width(); ++x) {
            const double d = dt.at(y, x);
            for (int c = 0; c < 3; ++c) {
                out.at(y, x, c) = std::clamp(d * hazy.at(y, x, c) + airlight[c] * (1.0 - d), 0.0, 1.0);
            }
        }
    }
    return out;
}

Image generate_rehazy_general(const Image& hazy, const TransmissionMap& t0, const DepthMap& depth,
                              const Airlight& airlight, const RehazyParams& params) {
    require_same_size(hazy.size(), depth.size(), "generate_rehazy_general");
    require_same_size(hazy.size(), t0.size(), "generate_rehazy_general");
    require_valid(airlight);
    require_values_in(hazy.values(), 0.0, 1.0, "hazy image");
    require_values_in(t0.values(), 0.0, 1.0, "transmission");
    for (int c = 0; c < 3; ++c) {
        const double shifted = airlight[c] + params.delta_airlight[static_cast<std::size_t>(c)];
        if (!std::isfinite(shifted) || shifted < 0.0 || shifted > 1.0) {
            throw InvalidParameter("airlight plus airlight offset leaves [0,1] in channel " + std::to_string(c));
        }
    }
    const TransmissionMap dt = delta_transmission(depth, params.delta_beta);

    Image out(hazy.size());
    for (int y = 0; y < hazy.height(); ++y) {
        for (int x = 0; x < hazy.width(); ++x) {
            const double d = dt.at(y, x);
            const double t_r = t0.at(y, x) * d;
            for (int c = 0; c < 3; ++c) {
                const double dA = params.delta_airlight[static_cast<std::size_t>(c)];
                const double v = d * hazy.at(y, x, c) + airlight[c] * (1.0 - d) + dA * (1.0 - t_r);
                out.at(y, x, c) = std::clamp(v, 0.0, 1.0);
            }
        }
    }
    return out;
}

double sample_delta_beta(const SceneProfile& profile, Rng& rng) {
    validate(profile);
    return rng.uniform(profile.delta_beta_range.min, profile.delta_beta_range.max);
}

}  // namespace rehaze
