#include "rehaze/image.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rehaze {

std::string to_string(Size size) {
    std::ostringstream out;
    out << size.height << "x" << size.width;
    return out.str();
}

void require_same_size(Size a, Size b, const char* what) {
    if (a != b) {
        throw ShapeError(std::string(what) + ": size mismatch " + to_string(a) + " vs " + to_string(b));
    }
}

void require_values_in(std::span<const double> values, double lo, double hi, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v) || v < lo || v > hi) {
            std::ostringstream out;
            out << what << ": value " << v << " outside [" << lo << ", " << hi << "]";
            throw InvalidParameter(out.str());
        }
    }
}

void require_valid(const Airlight& airlight) {
    require_values_in(airlight.rgb, 0.0, 1.0, "airlight");
}

Image clamp01(Image image) {
    for (double& v : image.values()) {
        v = std::clamp(v, 0.0, 1.0);
    }
    return image;
}

}  // namespace rehaze
