#include "psept/image.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>

namespace psept {

namespace {
std::atomic<std::uint64_t> g_luminance_clamps{0};

double clamp01_counted(double v) {
    if (v < 0.0 || v > 1.0) {
        g_luminance_clamps.fetch_add(1, std::memory_order_relaxed);
        return v < 0.0 ? 0.0 : 1.0;
    }
    return v;
}
}  // namespace

double luminance(double r, double g, double b) {
    r = clamp01_counted(r);
    g = clamp01_counted(g);
    b = clamp01_counted(b);
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

std::uint64_t luminance_clamp_warnings() { return g_luminance_clamps.load(); }
void reset_luminance_clamp_warnings() { g_luminance_clamps.store(0); }

GrayImage normalize(const GrayImage& img, ValueRange target, bool* degenerate) {
    GrayImage out;
    out.range = target;
    if (img.range.span() == 0.0) {
        if (degenerate) *degenerate = true;
        out.pixels = Eigen::ArrayXXd::Constant(img.pixels.rows(), img.pixels.cols(), target.mid());
        return out;
    }
    if (degenerate) *degenerate = false;
    const double scale = target.span() / img.range.span();
    out.pixels = (img.pixels - img.range.lo) * scale + target.lo;
    return out;
}

GrayImage add_gaussian_noise(const GrayImage& img, double sigma, std::uint64_t seed) {
    if (sigma < 0.0 || sigma > 0.5) throw std::invalid_argument("noise sigma must lie in [0, 0.5]");
    if (sigma == 0.0) return img;

    GrayImage out = img;
    std::mt19937_64 rng(seed);
    // 53-bit uniforms; u1 is shifted away from 0 so log(u1) is finite.
    auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

    double* p = out.pixels.data();
    const Eigen::Index n = out.pixels.size();
    for (Eigen::Index i = 0; i < n; i += 2) {
        double u1 = uniform();
        double u2 = uniform();
        double mag = sigma * std::sqrt(-2.0 * std::log1p(-u1));
        double z0 = mag * std::cos(2.0 * M_PI * u2);
        double z1 = mag * std::sin(2.0 * M_PI * u2);
        p[i] += z0;
        if (i + 1 < n) p[i + 1] += z1;
    }
    out.pixels = out.pixels.max(0.0).min(1.0);
    return out;
}

GrayImage rotate_image(const GrayImage& img, double angle_deg, double fill) {
    const int w = img.width(), h = img.height();
    const double cx = 0.5 * (w - 1), cy = 0.5 * (h - 1);
    const double a = angle_deg * M_PI / 180.0;
    // Output pixel pulls from the source rotated the opposite way.
    const double c = std::cos(-a), s = std::sin(-a);

    GrayImage out;
    out.range = img.range;
    out.pixels.resize(h, w);
    // Edge guard: quarter turns land source positions exactly on the raster
    // boundary, and rounding must not push them into the fill region.
    constexpr double edge_eps = 1e-9;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double dx = x - cx, dy = y - cy;
            double sx = cx + c * dx - s * dy;
            double sy = cy + s * dx + c * dy;
            if (sx < -edge_eps || sx > w - 1 + edge_eps || sy < -edge_eps || sy > h - 1 + edge_eps) {
                out.pixels(y, x) = fill;
            } else {
                out.pixels(y, x) = bilinear_sample(img.pixels, std::min(std::max(sx, 0.0), w - 1.0),
                                                   std::min(std::max(sy, 0.0), h - 1.0));
            }
        }
    }
    return out;
}

}  // namespace psept
