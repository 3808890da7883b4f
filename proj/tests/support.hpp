// Shared fixtures and brute-force oracles for the test suites. Nothing here
// calls into the code paths it is used to check.
#ifndef REHAZE_TESTS_SUPPORT_HPP
#define REHAZE_TESTS_SUPPORT_HPP

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "rehaze/image.hpp"
#include "rehaze/random.hpp"

namespace rehaze::test {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = fs::temp_directory_path() /
                ("rehaze_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ignored;
        fs::remove_all(path_, ignored);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

inline Image uniform_image(int h, int w, double v) { return Image(h, w, v); }

inline Image random_image(int h, int w, Rng& rng) {
    Image img(h, w);
    for (double& v : img.values()) {
        v = rng.unit();
    }
    return img;
}

inline DepthMap random_depth_field(int h, int w, Rng& rng) {
    DepthMap d(h, w);
    for (double& v : d.values()) {
        v = rng.unit();
    }
    return d;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

inline std::vector<char> file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Dark channel by direct window scan.
inline Plane brute_dark_channel(const Image& img, int patch) {
    const int r = patch / 2;
    Plane out(img.size());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double m = 1e300;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    const int yy = std::clamp(y + dy, 0, img.height() - 1);
                    const int xx = std::clamp(x + dx, 0, img.width() - 1);
                    for (int c = 0; c < 3; ++c) {
                        m = std::min(m, img.at(yy, xx, c));
                    }
                }
            }
            out.at(y, x) = m;
        }
    }
    return out;
}

/// SSIM with an explicit 2-D Gaussian window evaluated per position.
inline double brute_ssim(const Image& a, const Image& b, int window = 11, double sigma = 1.5) {
    const auto luma = [](const Image& im, int y, int x) {
        return 0.299 * im.at(y, x, 0) + 0.587 * im.at(y, x, 1) + 0.114 * im.at(y, x, 2);
    };
    std::vector<double> w(static_cast<std::size_t>(window * window));
    const double c = 0.5 * (window - 1);
    double z = 0.0;
    for (int i = 0; i < window; ++i) {
        for (int j = 0; j < window; ++j) {
            const double v = std::exp(-((i - c) * (i - c) + (j - c) * (j - c)) / (2 * sigma * sigma));
            w[static_cast<std::size_t>(i * window + j)] = v;
            z += v;
        }
    }
    const double c1 = 0.01 * 0.01;
    const double c2 = 0.03 * 0.03;
    double total = 0.0;
    int count = 0;
    for (int y = 0; y + window <= a.height(); ++y) {
        for (int x = 0; x + window <= a.width(); ++x) {
            double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
            for (int i = 0; i < window; ++i) {
                for (int j = 0; j < window; ++j) {
                    const double k = w[static_cast<std::size_t>(i * window + j)] / z;
                    const double p = luma(a, y + i, x + j);
                    const double q = luma(b, y + i, x + j);
                    mx += k * p;
                    my += k * q;
                    sxx += k * p * p;
                    syy += k * q * q;
                    sxy += k * p * q;
                }
            }
            const double vx = sxx - mx * mx;
            const double vy = syy - my * my;
            const double cov = sxy - mx * my;
            total += ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
            ++count;
        }
    }
    return total / count;
}

}  // namespace rehaze::test

#endif  // REHAZE_TESTS_SUPPORT_HPP
