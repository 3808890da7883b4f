#include "rehaze/pyramid.hpp"

#include <cmath>

#include "rehaze/metrics.hpp"

namespace rehaze::pyramid {
namespace {

// Symmetric reflection: -1 -> 0, n -> n - 1, n + 1 -> n - 2.
int reflect(int i, int n) {
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) {
        m += period;
    }
    return m < n ? m : period - 1 - m;
}

}  // namespace

Image downsample(const Image& image, int factor) {
    if (factor != 2 && factor != 4) {
        throw InvalidParameter("downsample factor must be 2 or 4, got " + std::to_string(factor));
    }
    const int h = image.height();
    const int w = image.width();
    const int oh = (h + factor - 1) / factor;
    const int ow = (w + factor - 1) / factor;
    const double norm = 1.0 / (factor * factor);

    Image out(oh, ow);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            for (int c = 0; c < 3; ++c) {
                double sum = 0.0;
                for (int dy = 0; dy < factor; ++dy) {
                    for (int dx = 0; dx < factor; ++dx) {
                        sum += image.at(reflect(y * factor + dy, h), reflect(x * factor + dx, w), c);
                    }
                }
                out.at(y, x, c) = sum * norm;
            }
        }
    }
    return out;
}

Scales build(const Image& full) {
    return {full, downsample(full, 2), downsample(full, 4)};
}

double multiscale_l1(const Scales& outputs, const Scales& targets, const Weights& weights) {
    if (!std::isfinite(weights.half) || !std::isfinite(weights.quarter) || weights.half < 0.0 ||
        weights.quarter < 0.0) {
        throw InvalidParameter("multi-scale weights must be finite and >= 0");
    }
    return metrics::l1(outputs.full, targets.full) + weights.half * metrics::l1(outputs.half, targets.half) +
           weights.quarter * metrics::l1(outputs.quarter, targets.quarter);
}

}  // namespace rehaze::pyramid
