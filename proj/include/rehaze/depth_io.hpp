#ifndef REHAZE_DEPTH_IO_HPP
#define REHAZE_DEPTH_IO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "rehaze/image.hpp"

// Depth enters the toolkit from files produced by an external monocular
// estimator, or from analytic generators for fixtures.

namespace rehaze::depth {

inline constexpr double kInverseEpsilon = 1e-4;

/// How raw file samples (scaled to [0,1] by the bit depth) become depth.
struct Normalization {
    enum class Kind { minmax, fixed_range, inverse_then_minmax };

    Kind kind = Kind::minmax;
    double lo = 0.0;
    double hi = 1.0;

    static Normalization minmax() { return {Kind::minmax, 0.0, 1.0}; }
    static Normalization fixed_range(double lo, double hi) { return {Kind::fixed_range, lo, hi}; }
    static Normalization inverse_then_minmax() { return {Kind::inverse_then_minmax, 0.0, 1.0}; }
};

/// Applies a normalization to raw samples in [0,1].
///
/// minmax and inverse_then_minmax throw DegenerateDepth on a constant input;
/// fixed_range maps [lo, hi] linearly onto [0,1] and clamps.
DepthMap normalize(const Plane& raw, const Normalization& normalization);

/// Loads a grayscale (or RGB, first channel) 8/16-bit PNG.
DepthMap load_depth(const std::filesystem::path& path, const Normalization& normalization);

/// Sidecar `<stem>.json` next to the depth file:
/// {"convention": "depth"|"inverse_depth", "lo": real, "hi": real}.
struct Sidecar {
    std::string convention = "depth";
    std::optional<double> lo;
    std::optional<double> hi;
};

std::optional<Sidecar> read_sidecar(const std::filesystem::path& depth_path);

/// Normalization implied by a sidecar: inverse_depth -> inverse_then_minmax,
/// depth with lo/hi -> fixed_range(lo, hi), otherwise minmax.
Normalization normalization_for(const std::optional<Sidecar>& sidecar);

/// load_depth with the normalization chosen by the file's sidecar.
DepthMap load_depth_auto(const std::filesystem::path& path);

/// Analytic fixture fields.
struct Pattern {
    enum class Kind { constant, ramp_horizontal, ramp_vertical, radial, step };

    Kind kind = Kind::constant;
    double value = 0.0;  // constant
    int levels = 2;      // step

    static Pattern constant(double v) { return {Kind::constant, v, 2}; }
    static Pattern ramp_horizontal() { return {Kind::ramp_horizontal, 0.0, 2}; }
    static Pattern ramp_vertical() { return {Kind::ramp_vertical, 0.0, 2}; }
    static Pattern radial() { return {Kind::radial, 0.0, 2}; }
    static Pattern step(int levels) { return {Kind::step, 0.0, levels}; }
};

/// constant: v everywhere. ramp: coordinate / (extent - 1) along the axis.
/// radial: distance to the image centre over the centre-to-corner distance.
/// step(k): k equal-width vertical bands with depths 0, 1/(k-1), ..., 1.
DepthMap synth_depth(const Pattern& pattern, Size size);

/// Mean absolute difference.
double depth_l1(const DepthMap& a, const DepthMap& b);

}  // namespace rehaze::depth

#endif  // REHAZE_DEPTH_IO_HPP
