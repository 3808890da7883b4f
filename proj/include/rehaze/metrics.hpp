#ifndef REHAZE_METRICS_HPP
#define REHAZE_METRICS_HPP

#include <array>

#include "rehaze/image.hpp"

namespace rehaze::metrics {

/// Display cap used when PSNR is infinite (identical images).
inline constexpr double kPsnrDisplayCap = 99.0;

/// Mean absolute difference over all pixels and channels.
double l1(const Image& a, const Image& b);

double mse(const Image& a, const Image& b);

/// -10 log10(MSE) with peak 1. Identical images give +infinity.
double psnr(const Image& a, const Image& b);

/// min(psnr, kPsnrDisplayCap); what reports and tables show.
double psnr_display(double psnr_db);

struct SsimOptions {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
};

/// BT.601 luma.
Plane luma(const Image& image);

/// Mean local SSIM of the luma planes over all fully contained Gaussian
/// windows. Throws InvalidParameter if either side is smaller than the window.
double ssim(const Image& a, const Image& b, const SsimOptions& options = {});

/// Normalized 1-D Gaussian taps.
std::vector<double> gaussian_taps(int window, double sigma);

using Lab = std::array<double, 3>;

/// sRGB (D65, 2 degree observer) in [0,1] to CIELAB.
Lab srgb_to_lab(double r, double g, double b);

/// CIEDE2000 colour difference with kL = kC = kH = 1.
double delta_e2000(const Lab& first, const Lab& second);

/// Per-pixel CIEDE2000 averaged over the image.
double ciede2000(const Image& a, const Image& b);

struct Scores {
    double psnr = 0.0;
    double ssim = 0.0;
    double ciede2000 = 0.0;
    double l1 = 0.0;
};

Scores score(const Image& a, const Image& b);

}  // namespace rehaze::metrics

#endif  // REHAZE_METRICS_HPP
