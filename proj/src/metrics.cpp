#include "rehaze/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace rehaze::metrics {
namespace {

constexpr double kPi = std::numbers::pi;

double deg(double rad) { return rad * 180.0 / kPi; }
double rad(double degrees) { return degrees * kPi / 180.0; }

double srgb_decode(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
    return t > 0.008856 ? std::cbrt(t) : 7.787 * t + 16.0 / 116.0;
}

// Valid-mode separable correlation: output shrinks by window - 1 per axis.
Plane filter_valid(const Plane& in, const std::vector<double>& taps) {
    const int k = static_cast<int>(taps.size());
    const int h = in.height();
    const int w = in.width();
    Plane rows(h, w - k + 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x + k <= w; ++x) {
            double s = 0.0;
            for (int i = 0; i < k; ++i) {
                s += taps[static_cast<std::size_t>(i)] * in.at(y, x + i);
            }
            rows.at(y, x) = s;
        }
    }
    Plane out(h - k + 1, w - k + 1);
    for (int y = 0; y + k <= h; ++y) {
        for (int x = 0; x < rows.width(); ++x) {
            double s = 0.0;
            for (int i = 0; i < k; ++i) {
                s += taps[static_cast<std::size_t>(i)] * rows.at(y + i, x);
            }
            out.at(y, x) = s;
        }
    }
    return out;
}

Plane product(const Plane& a, const Plane& b) {
    Plane out(a.size());
    auto dst = out.values();
    auto va = a.values();
    auto vb = b.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = va[i] * vb[i];
    }
    return out;
}

}  // namespace

double l1(const Image& a, const Image& b) {
    require_same_size(a.size(), b.size(), "l1");
    auto va = a.values();
    auto vb = b.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        sum += std::abs(va[i] - vb[i]);
    }
    return sum / static_cast<double>(va.size());
}

double mse(const Image& a, const Image& b) {
    require_same_size(a.size(), b.size(), "mse");
    auto va = a.values();
    auto vb = b.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        const double d = va[i] - vb[i];
        sum += d * d;
    }
    return sum / static_cast<double>(va.size());
}

double psnr(const Image& a, const Image& b) {
    const double m = mse(a, b);
    if (m == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return -10.0 * std::log10(m);
}

double psnr_display(double psnr_db) { return std::min(psnr_db, kPsnrDisplayCap); }

Plane luma(const Image& image) {
    Plane y(image.size());
    for (int r = 0; r < image.height(); ++r) {
        for (int c = 0; c < image.width(); ++c) {
            y.at(r, c) = 0.299 * image.at(r, c, 0) + 0.587 * image.at(r, c, 1) + 0.114 * image.at(r, c, 2);
        }
    }
    return y;
}

std::vector<double> gaussian_taps(int window, double sigma) {
    std::vector<double> taps(static_cast<std::size_t>(window));
    const double center = 0.5 * (window - 1);
    double total = 0.0;
    for (int i = 0; i < window; ++i) {
        const double d = i - center;
        taps[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
        total += taps[static_cast<std::size_t>(i)];
    }
    for (double& t : taps) {
        t /= total;
    }
    return taps;
}

double ssim(const Image& a, const Image& b, const SsimOptions& options) {
    require_same_size(a.size(), b.size(), "ssim");
    if (options.window < 1 || !(options.sigma > 0.0)) {
        throw InvalidParameter("ssim window must be >= 1 and sigma > 0");
    }
    if (a.height() < options.window || a.width() < options.window) {
        throw InvalidParameter("ssim needs images of at least " + std::to_string(options.window) + "x" +
                               std::to_string(options.window) + ", got " + to_string(a.size()));
    }
    const auto taps = gaussian_taps(options.window, options.sigma);
    const Plane x = luma(a);
    const Plane y = luma(b);

    const Plane mu_x = filter_valid(x, taps);
    const Plane mu_y = filter_valid(y, taps);
    const Plane xx = filter_valid(product(x, x), taps);
    const Plane yy = filter_valid(product(y, y), taps);
    const Plane xy = filter_valid(product(x, y), taps);

    const double c1 = options.k1 * options.k1;
    const double c2 = options.k2 * options.k2;
    double sum = 0.0;
    const auto mx = mu_x.values();
    const auto my = mu_y.values();
    for (std::size_t i = 0; i < mx.size(); ++i) {
        const double var_x = xx.values()[i] - mx[i] * mx[i];
        const double var_y = yy.values()[i] - my[i] * my[i];
        const double cov = xy.values()[i] - mx[i] * my[i];
        sum += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2)) /
               ((mx[i] * mx[i] + my[i] * my[i] + c1) * (var_x + var_y + c2));
    }
    return sum / static_cast<double>(mx.size());
}

Lab srgb_to_lab(double r, double g, double b) {
    const double lr = srgb_decode(r);
    const double lg = srgb_decode(g);
    const double lb = srgb_decode(b);
    const double x = 0.412453 * lr + 0.357580 * lg + 0.180423 * lb;
    const double y = 0.212671 * lr + 0.715160 * lg + 0.072169 * lb;
    const double z = 0.019334 * lr + 0.119193 * lg + 0.950227 * lb;
    const double fx = lab_f(x / 0.95047);
    const double fy = lab_f(y / 1.0);
    const double fz = lab_f(z / 1.08883);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double delta_e2000(const Lab& first, const Lab& second) {
    const auto [l1, a1, b1] = first;
    const auto [l2, a2, b2] = second;

    const double c1 = std::hypot(a1, b1);
    const double c2 = std::hypot(a2, b2);
    const double c_bar = 0.5 * (c1 + c2);
    const double c_bar7 = std::pow(c_bar, 7.0);
    const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + std::pow(25.0, 7.0))));

    const double a1p = (1.0 + g) * a1;
    const double a2p = (1.0 + g) * a2;
    const double c1p = std::hypot(a1p, b1);
    const double c2p = std::hypot(a2p, b2);

    const auto hue = [](double b, double ap) {
        if (b == 0.0 && ap == 0.0) {
            return 0.0;
        }
        double h = deg(std::atan2(b, ap));
        return h < 0.0 ? h + 360.0 : h;
    };
    const double h1p = hue(b1, a1p);
    const double h2p = hue(b2, a2p);

    const double dlp = l2 - l1;
    const double dcp = c2p - c1p;
    double dhp = 0.0;
    if (c1p * c2p != 0.0) {
        dhp = h2p - h1p;
        if (dhp > 180.0) {
            dhp -= 360.0;
        } else if (dhp < -180.0) {
            dhp += 360.0;
        }
    }
    const double dHp = 2.0 * std::sqrt(c1p * c2p) * std::sin(rad(0.5 * dhp));

    const double lp_bar = 0.5 * (l1 + l2);
    const double cp_bar = 0.5 * (c1p + c2p);
    double hp_bar = h1p + h2p;
    if (c1p * c2p != 0.0) {
        if (std::abs(h1p - h2p) <= 180.0) {
            hp_bar *= 0.5;
        } else if (h1p + h2p < 360.0) {
            hp_bar = 0.5 * (h1p + h2p + 360.0);
        } else {
            hp_bar = 0.5 * (h1p + h2p - 360.0);
        }
    }

    const double t = 1.0 - 0.17 * std::cos(rad(hp_bar - 30.0)) + 0.24 * std::cos(rad(2.0 * hp_bar)) +
                     0.32 * std::cos(rad(3.0 * hp_bar + 6.0)) - 0.20 * std::cos(rad(4.0 * hp_bar - 63.0));
    const double d_theta = 30.0 * std::exp(-std::pow((hp_bar - 275.0) / 25.0, 2.0));
    const double cp_bar7 = std::pow(cp_bar, 7.0);
    const double rc = 2.0 * std::sqrt(cp_bar7 / (cp_bar7 + std::pow(25.0, 7.0)));
    const double lp50 = (lp_bar - 50.0) * (lp_bar - 50.0);
    const double sl = 1.0 + 0.015 * lp50 / std::sqrt(20.0 + lp50);
    const double sc = 1.0 + 0.045 * cp_bar;
    const double sh = 1.0 + 0.015 * cp_bar * t;
    const double rt = -std::sin(rad(2.0 * d_theta)) * rc;

    const double tl = dlp / sl;
    const double tc = dcp / sc;
    const double th = dHp / sh;
    return std::sqrt(tl * tl + tc * tc + th * th + rt * tc * th);
}

double ciede2000(const Image& a, const Image& b) {
    require_same_size(a.size(), b.size(), "ciede2000");
    double sum = 0.0;
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            const Lab la = srgb_to_lab(a.at(y, x, 0), a.at(y, x, 1), a.at(y, x, 2));
            const Lab lb = srgb_to_lab(b.at(y, x, 0), b.at(y, x, 1), b.at(y, x, 2));
            sum += delta_e2000(la, lb);
        }
    }
    return sum / static_cast<double>(a.size().pixels());
}

Scores score(const Image& a, const Image& b) {
    return {psnr(a, b), ssim(a, b), ciede2000(a, b), l1(a, b)};
}

}  // namespace rehaze::metrics
