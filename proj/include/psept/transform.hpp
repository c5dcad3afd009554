#pragma once

#include <Eigen/Dense>
#include <complex>
#include <filesystem>

#include "psept/bases.hpp"
#include "psept/polar_grid.hpp"

namespace psept {

/// Normalization conventions for the analysis path.
///
/// `orthonormal` projects onto the orthonormal tensor kernels with no
/// Jacobi weighting, which is the convention under which exact inversion,
/// Parseval, and unit conditioning all hold simultaneously.
///
/// `paper_literal` applies the ring weights w_k = r_k and a 1/(n_r n_theta)
/// prefactor to the literal kernel (no special scaling of the constant
/// radial mode). It exists for fidelity experiments only and defines no
/// inverse.
enum class Convention { orthonormal, paper_literal };

/// Complex spectrum C_{n,m}: row n in [0, n_r), column index mi holds the
/// signed angular order m = mi - n_theta/2. The table always keeps its full
/// n_r x n_theta shape; truncation zeroes entries rather than reshaping.
struct CoefficientTable {
    PolarGrid grid;
    Eigen::MatrixXcd values;  // n_r x n_theta
    Convention convention = Convention::orthonormal;

    int m_index(int m) const { return m + grid.n_theta / 2; }
    int m_of(int mi) const { return mi - grid.n_theta / 2; }
    std::complex<double>& at(int n, int m) { return values(n, m_index(m)); }
    std::complex<double> at(int n, int m) const { return values(n, m_index(m)); }
};

/// Two-stage analysis: an orthonormal half-sample cosine transform along
/// every angular slice, then a unit-norm Fourier transform across slices
/// for every radial mode. Under the orthonormal convention the result
/// equals the inner product of the input with every kernel exactly.
CoefficientTable forward(const ComplexPolarImage& polar, Convention convention = Convention::orthonormal);
CoefficientTable forward(const PolarImage& polar, Convention convention = Convention::orthonormal);

/// Two-stage synthesis (angular first, then radial), the adjoint of
/// forward; inverse(forward(g)) reproduces g to machine precision.
/// Rejects paper_literal tables, which have no inverse.
ComplexPolarImage inverse(const CoefficientTable& coeffs);

/// O((n_r n_theta)^2) reference implementations summing kernels directly;
/// kept as oracles for the fast two-stage paths.
CoefficientTable forward_direct(const ComplexPolarImage& polar, Convention convention = Convention::orthonormal);
ComplexPolarImage inverse_direct(const CoefficientTable& coeffs);

/// Zeroes every entry with n > n_cap or |m| > m_cap (the Nyquist column
/// always falls outside m_cap); all surviving entries are bit-identical.
CoefficientTable truncate(const CoefficientTable& coeffs, int n_cap, int m_cap);

/// Spectrum of the same scene rotated by +alpha radians: each entry is
/// multiplied by e^{-i m alpha}; magnitudes are untouched.
CoefficientTable rotate_coefficients(const CoefficientTable& coeffs, double alpha);

double energy_spatial(const PolarImage& polar);
double energy_spatial(const ComplexPolarImage& polar);
double energy_spectral(const CoefficientTable& coeffs);

/// Binary container: magic "PSEPT1", u32le n_r, u32le n_theta, u16le
/// length-prefixed decimal string for r_max, u8 convention tag, then
/// n_r * n_theta (re, im) float64le pairs, n-major, m ascending from
/// -n_theta/2.
void save_coefficients(const CoefficientTable& coeffs, const std::filesystem::path& path);
CoefficientTable load_coefficients(const std::filesystem::path& path);

/// CSV rows (n, m, re, im) in the same order as the binary payload.
void write_coefficients_csv(const CoefficientTable& coeffs, const std::filesystem::path& path);

}  // namespace psept
