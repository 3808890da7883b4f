#ifndef REHAZE_SYNTHETIC_HPP
#define REHAZE_SYNTHETIC_HPP

#include "rehaze/depth_io.hpp"
#include "rehaze/image.hpp"
#include "rehaze/random.hpp"

namespace rehaze::synthetic {

/// Smooth colour gradients plus per-pixel texture and sparse near-black
/// samples (10% of pixels, one channel), so typical 15x15 windows have a dark
/// channel close to zero.
Image random_scene(Size size, Rng& rng);

/// One of the analytic depth patterns with a random orientation or level count.
DepthMap random_depth(Size size, Rng& rng);

}  // namespace rehaze::synthetic

#endif  // REHAZE_SYNTHETIC_HPP
