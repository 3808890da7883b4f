#ifndef REHAZE_SCATTERING_HPP
#define REHAZE_SCATTERING_HPP

#include <string>

#include "rehaze/image.hpp"
#include "rehaze/random.hpp"

// Forward atmospheric scattering model I = J*t + A*(1 - t), t = exp(-beta*d),
// its inverse, and the scene-dependent parameter distributions.

namespace rehaze {

/// Lower bound on t used by inversion only. Synthesis never clamps.
inline constexpr double kInversionTMin = 0.05;

struct Range {
    double min = 0.0;
    double max = 0.0;

    double midpoint() const { return 0.5 * (min + max); }
    bool contains(double v) const { return v >= min && v <= max; }
    friend bool operator==(const Range&, const Range&) = default;
};

enum class SceneKind { indoor, outdoor };

std::string to_string(SceneKind kind);
SceneKind parse_scene_kind(const std::string& text);

/// Uniform sampling supports for airlight, scattering coefficient and rehazy
/// increment. Beta is per unit of normalized depth.
struct SceneProfile {
    SceneKind kind = SceneKind::indoor;
    Range a_range;
    Range beta_range;
    Range delta_beta_range;

    static SceneProfile indoor() { return {SceneKind::indoor, {0.7, 1.0}, {0.6, 1.8}, {0.1, 0.5}}; }
    static SceneProfile outdoor() { return {SceneKind::outdoor, {0.8, 1.0}, {0.01, 0.3}, {0.01, 0.15}}; }
    static SceneProfile defaults(SceneKind kind) { return kind == SceneKind::indoor ? indoor() : outdoor(); }
    friend bool operator==(const SceneProfile&, const SceneProfile&) = default;
};

/// Throws InvalidParameter unless 0 <= min <= max <= 1 for airlight and
/// 0 < min <= max for both beta ranges.
void validate(const SceneProfile& profile);

struct HazeParams {
    double beta = 0.0;
    Airlight airlight;
};

/// t(x) = exp(-beta * d(x)). Underflow is floored at the smallest normal
/// double so the map stays strictly positive.
TransmissionMap transmission(const DepthMap& depth, double beta);

Image synthesize_haze(const Image& clean, const TransmissionMap& t, const Airlight& airlight);

/// J = (I - A(1 - t)) / max(t, t_min), clamped to [0,1].
Image invert_asm(const Image& hazy, const TransmissionMap& t, const Airlight& airlight,
                 double t_min = kInversionTMin);

/// beta ~ U(beta_range); one scalar a ~ U(a_range) replicated to all channels.
/// Draw order is beta, then a.
HazeParams sample_haze_params(const SceneProfile& profile, Rng& rng);

namespace detail {
void require_depth(const DepthMap& depth);
void require_rate(double rate, const char* what);
}  // namespace detail

}  // namespace rehaze

#endif  // REHAZE_SCATTERING_HPP
