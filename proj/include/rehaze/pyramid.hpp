#ifndef REHAZE_PYRAMID_HPP
#define REHAZE_PYRAMID_HPP

#include "rehaze/image.hpp"

namespace rehaze::pyramid {

/// Box (area-average) pooling by 2 or 4. Sizes that are not multiples of the
/// factor are first extended by symmetric reflection (edge sample repeated)
/// up to the next multiple.
Image downsample(const Image& image, int factor);

struct Scales {
    Image full;
    Image half;
    Image quarter;
};

/// full, downsample(full, 2), downsample(full, 4).
Scales build(const Image& full);

struct Weights {
    double half = 0.5;
    double quarter = 0.25;
};

/// L1(full) + w.half * L1(half) + w.quarter * L1(quarter).
double multiscale_l1(const Scales& outputs, const Scales& targets, const Weights& weights = {});

}  // namespace rehaze::pyramid

#endif  // REHAZE_PYRAMID_HPP
