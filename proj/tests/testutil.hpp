#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "psept/image.hpp"
#include "psept/polar_grid.hpp"

namespace testutil {

inline psept::PolarImage random_polar_image(const psept::PolarGrid& grid, std::uint64_t seed,
                                            double lo = 0.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(lo, hi);
    psept::PolarImage g;
    g.grid = grid;
    g.samples.resize(grid.n_theta, grid.n_r);
    for (int j = 0; j < grid.n_theta; ++j)
        for (int k = 0; k < grid.n_r; ++k) g.samples(j, k) = uni(rng);
    return g;
}

struct Blob {
    double cx_frac;  // center as fraction of width
    double cy_frac;
    double sigma_px;
    double amplitude;
};

/// Sum of Gaussians; centers given as fractions of the image side.
inline psept::GrayImage gaussian_mixture(int size, const std::vector<Blob>& blobs) {
    psept::GrayImage img;
    img.range = {0.0, 1.0};
    img.pixels = Eigen::ArrayXXd::Zero(size, size);
    for (const auto& b : blobs) {
        const double cx = b.cx_frac * (size - 1), cy = b.cy_frac * (size - 1);
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x) {
                const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                img.pixels(y, x) += b.amplitude * std::exp(-d2 / (2.0 * b.sigma_px * b.sigma_px));
            }
    }
    return img;
}

/// Smooth test scene whose support stays well inside the inscribed disk.
inline psept::GrayImage smooth_test_image(int size) {
    auto img = gaussian_mixture(size, {{0.5, 0.5, size * 0.16, 0.55},
                                       {0.38, 0.42, size * 0.07, 0.35},
                                       {0.62, 0.58, size * 0.05, 0.25},
                                       {0.52, 0.33, size * 0.045, 0.2}});
    img.pixels = img.pixels.min(1.0);
    return img;
}

/// Same scene hard-zeroed outside radius_frac of the inscribed disk, for
/// tests that require the support to stay strictly inside it.
inline psept::GrayImage disk_supported_image(int size, double radius_frac = 0.7) {
    psept::GrayImage img = smooth_test_image(size);
    const double c = 0.5 * (size - 1), s = 0.5 * size - 0.5;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double d2 = (x - c) * (x - c) + (y - c) * (y - c);
            if (d2 > radius_frac * radius_frac * s * s) img.pixels(y, x) = 0.0;
        }
    return img;
}

inline std::filesystem::path fresh_dir(const std::string& name) {
    std::filesystem::path p = std::filesystem::current_path() / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

}  // namespace testutil
