#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace psept {

/// Closed value interval attached to an image as metadata.
struct ValueRange {
    double lo = 0.0;
    double hi = 1.0;

    double mid() const { return 0.5 * (lo + hi); }
    double span() const { return hi - lo; }
    bool operator==(const ValueRange&) const = default;
};

/// Single-channel raster. Pixels are stored as an Eigen array with
/// one row per scanline: pixels(y, x). The declared range is metadata;
/// it is enforced by normalize(), not by construction.
struct GrayImage {
    Eigen::ArrayXXd pixels;  // height x width
    ValueRange range{0.0, 1.0};

    int width() const { return static_cast<int>(pixels.cols()); }
    int height() const { return static_cast<int>(pixels.rows()); }
};

/// Rec.601 luma from channels in [0,1]. Out-of-range inputs are clamped
/// and counted (see luminance_clamp_warnings).
double luminance(double r, double g, double b);

/// Number of channel values clamped by luminance() since start/reset.
std::uint64_t luminance_clamp_warnings();
void reset_luminance_clamp_warnings();

/// Affine remap of the declared range onto `target`. A degenerate source
/// range (lo == hi) produces a constant image at the target midpoint and
/// sets *degenerate when provided.
GrayImage normalize(const GrayImage& img, ValueRange target, bool* degenerate = nullptr);

/// Adds i.i.d. zero-mean Gaussian noise of standard deviation sigma, then
/// clamps to [0,1]. Deterministic for a fixed seed on every platform:
/// the generator is std::mt19937_64 and the normal variates come from a
/// Box-Muller transform evaluated in a fixed order (no library
/// normal_distribution, whose sequence is implementation-defined).
/// Requires sigma in [0, 0.5]; sigma == 0 returns the input bit-for-bit.
GrayImage add_gaussian_noise(const GrayImage& img, double sigma, std::uint64_t seed);

/// Rotates about the image center by angle_deg counterclockwise
/// (x = column axis, y = row axis, angles from +x toward +y), bilinear
/// resampling. Samples falling outside the source raster take `fill`.
/// Output dimensions equal input dimensions.
GrayImage rotate_image(const GrayImage& img, double angle_deg, double fill = 0.0);

/// Bilinear interpolation at fractional coordinates (x, y) = (col, row).
/// The 2x2 stencil is clamped to the array bounds.
template <typename Derived>
typename Derived::Scalar bilinear_sample(const Eigen::ArrayBase<Derived>& a, double x, double y) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    double fx = std::floor(x), fy = std::floor(y);
    auto clampi = [](Eigen::Index v, Eigen::Index n) {
        return v < 0 ? Eigen::Index{0} : (v >= n ? n - 1 : v);
    };
    Eigen::Index x0 = clampi(static_cast<Eigen::Index>(fx), cols);
    Eigen::Index x1 = clampi(x0 + 1, cols);
    Eigen::Index y0 = clampi(static_cast<Eigen::Index>(fy), rows);
    Eigen::Index y1 = clampi(y0 + 1, rows);
    double tx = x - fx, ty = y - fy;
    Scalar top = a(y0, x0) * (1.0 - tx) + a(y0, x1) * tx;
    Scalar bot = a(y1, x0) * (1.0 - tx) + a(y1, x1) * tx;
    return top * (1.0 - ty) + bot * ty;
}

}  // namespace psept
