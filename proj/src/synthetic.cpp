#include "rehaze/synthetic.hpp"

#include <algorithm>

namespace rehaze::synthetic {

Image random_scene(Size size, Rng& rng) {
    Image image(size);
    std::array<double, 3> base{};
    std::array<double, 3> gx{};
    std::array<double, 3> gy{};
    for (std::size_t c = 0; c < 3; ++c) {
        base[c] = rng.uniform(0.2, 0.8);
        gx[c] = rng.uniform(-0.3, 0.3);
        gy[c] = rng.uniform(-0.3, 0.3);
    }
    const double sx = size.width > 1 ? 1.0 / (size.width - 1) : 0.0;
    const double sy = size.height > 1 ? 1.0 / (size.height - 1) : 0.0;
    for (int y = 0; y < size.height; ++y) {
        for (int x = 0; x < size.width; ++x) {
            for (int c = 0; c < 3; ++c) {
                const auto k = static_cast<std::size_t>(c);
                const double smooth = base[k] + gx[k] * (x * sx - 0.5) + gy[k] * (y * sy - 0.5);
                const double texture = rng.uniform(-0.5, 0.5);
                image.at(y, x, c) = std::clamp(smooth + texture, 0.0, 1.0);
            }
            // Sparse shadow samples.
            if (rng.unit() < 0.1) {
                image.at(y, x, static_cast<int>(rng.next_u64() % 3)) = rng.uniform(0.0, 0.05);
            }
        }
    }
    return image;
}

DepthMap random_depth(Size size, Rng& rng) {
    using depth::Pattern;
    switch (rng.next_u64() % 4) {
    case 0:
        return depth::synth_depth(Pattern::ramp_horizontal(), size);
    case 1:
        return depth::synth_depth(Pattern::ramp_vertical(), size);
    case 2:
        return depth::synth_depth(Pattern::radial(), size);
    default:
        return depth::synth_depth(Pattern::step(2 + static_cast<int>(rng.next_u64() % 4)), size);
    }
}

}  // namespace rehaze::synthetic
