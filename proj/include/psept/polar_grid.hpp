#pragma once

#include <Eigen/Dense>
#include <complex>
#include <filesystem>

#include "psept/image.hpp"

namespace psept {

/// Discrete unit-disk lattice. Radii are equispaced from 0 to r_max and the
/// angles cover [-pi, pi) starting exactly at -pi. The per-ring weights are
/// the polar Jacobi factors w_k = r_k; the analysis path does not apply
/// them (the radial basis is orthonormal in the bare index k), they exist
/// for disk-measure energy reporting and the literal-normalization mode.
struct PolarGrid {
    int n_r = 0;
    int n_theta = 0;
    double r_max = 0.999;
    Eigen::ArrayXd radii;    // r_k = k/(n_r-1) * r_max
    Eigen::ArrayXd thetas;   // theta_j = -pi + 2 pi j / n_theta
    Eigen::ArrayXd weights;  // w_k = r_k

    bool operator==(const PolarGrid& o) const {
        return n_r == o.n_r && n_theta == o.n_theta && r_max == o.r_max;
    }
};

/// n_theta must be even so the signed angular orders m in
/// [-n_theta/2, n_theta/2) pair up symmetrically; n_r >= 2.
PolarGrid build_grid(int n_r, int n_theta, double r_max = 0.999);

/// Default grid for an N x N raster: n_r = N, n_theta = next even
/// integer >= ceil(pi N).
PolarGrid default_grid_for(int width, int height, double r_max = 0.999);

/// Samples on a polar grid, samples(j, k) = g(theta_j, r_k).
template <typename Scalar>
struct PolarImageT {
    PolarGrid grid;
    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> samples;  // n_theta x n_r
};

using PolarImage = PolarImageT<double>;
using ComplexPolarImage = PolarImageT<std::complex<double>>;

/// Resamples a raster onto the grid: sample (j,k) is the bilinear value at
/// the Cartesian point c + r_k * s * (cos theta_j, sin theta_j), where c is
/// the image center and s = min(w,h)/2 - 0.5. The half-pixel inset keeps
/// every interpolation stencil inside the raster, so nothing outside the
/// inscribed disk is ever read.
PolarImage cart_to_polar(const GrayImage& img, const PolarGrid& grid);

/// Renders polar samples back to a raster. Pixels outside the inscribed
/// disk take `fill`; angular interpolation wraps, radial interpolation
/// clamps at the outermost ring.
GrayImage polar_to_cart(const PolarImage& polar, int width, int height, double fill = 0.0);

/// Cyclic row shift: out(j, :) = in((j - delta) mod n_theta, :), i.e. the
/// polar image of the same scene rotated by +delta * 2pi/n_theta.
template <typename Scalar>
PolarImageT<Scalar> shift_rows(const PolarImageT<Scalar>& in, int delta) {
    PolarImageT<Scalar> out;
    out.grid = in.grid;
    const int n = in.grid.n_theta;
    out.samples.resizeLike(in.samples);
    for (int j = 0; j < n; ++j) out.samples.row(j) = in.samples.row(((j - delta) % n + n) % n);
    return out;
}

/// PGM container for polar sample grids: a comment line records the grid
/// (n_r, n_theta, r_max) and the value interval [lo, hi] that the 16-bit
/// quantization maps onto.
void save_polar_pgm(const PolarImage& polar, const std::filesystem::path& path,
                    double lo = 0.0, double hi = 1.0);
PolarImage load_polar_pgm(const std::filesystem::path& path);

}  // namespace psept
