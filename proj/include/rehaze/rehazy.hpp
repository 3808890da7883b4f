#ifndef REHAZE_REHAZY_HPP
#define REHAZE_REHAZY_HPP

#include "rehaze/image.hpp"
#include "rehaze/random.hpp"
#include "rehaze/scattering.hpp"

namespace rehaze {

/// Change of haze between a hazy image and its rehazy counterpart.
struct RehazyParams {
    double delta_beta = 0.0;
    std::array<double, 3> delta_airlight{0.0, 0.0, 0.0};
};

/// dt(x) = exp(-delta_beta * d0(x)).
TransmissionMap delta_transmission(const DepthMap& depth, double delta_beta);

/// Adds haze to an already hazy image while keeping its clean counterpart:
///
///     I_r = dt * I_0 + A_0 * (1 - dt)
///
/// Only the airlight of the input, the depth of the input and the increment
/// delta_beta are needed; neither the clean image nor t_0 is. The airlight of
/// I_r equals A_0. Applying it twice composes additively in delta_beta.
Image generate_rehazy(const Image& hazy, const DepthMap& depth, const Airlight& airlight, double delta_beta);

/// General form with an airlight change dA:
///
///     I_r = dt * I_0 + A_0 * (1 - dt) + dA * (1 - t_0 * dt)
///
/// which requires the transmission t_0 of the input. Output clamped to [0,1].
/// Throws InvalidParameter if A_0 + dA leaves [0,1] in any channel.
Image generate_rehazy_general(const Image& hazy, const TransmissionMap& t0, const DepthMap& depth,
                              const Airlight& airlight, const RehazyParams& params);

/// delta_beta ~ U(profile.delta_beta_range).
double sample_delta_beta(const SceneProfile& profile, Rng& rng);

}  // namespace rehaze

#endif  // REHAZE_REHAZY_HPP
