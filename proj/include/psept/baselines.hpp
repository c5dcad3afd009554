#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "psept/bases.hpp"
#include "psept/features.hpp"
#include "psept/image.hpp"

namespace psept {

/// Classical disk-moment families computed by direct projection on the
/// Cartesian lattice. They exist as the comparison axis for conditioning,
/// runtime, and reconstruction-stability experiments; no attempt is made
/// to stabilize them beyond log-space factorials.
enum class MomentFamily { zernike, pseudo_zernike, pct, pst, pcet };

const char* family_name(MomentFamily family);
SelectionRule family_rule(MomentFamily family, int C);

/// Radial polynomial R_n^{|m|}(r) =
///   sum_s (-1)^s (n-s)! / [s! ((n+|m|)/2-s)! ((n-|m|)/2-s)!] r^{n-2s}.
/// Coefficients are assembled from log-gamma with explicit signs, which
/// delays rather than hides the cancellation blow-up at high order.
/// Requires (n - m_abs) even; throws on parity violation or m_abs > n.
double zernike_radial(int n, int m_abs, double r);

/// Pseudo-Zernike radial polynomial (no parity constraint, degree n).
double pseudo_zernike_radial(int n, int m_abs, double r);

/// Thrown when a requested order produces coefficient terms beyond double
/// range, i.e. the order is unrepresentable, not merely inaccurate.
class PrecisionLossError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Admitted index set of a family at complexity C, ascending n then m.
std::vector<KernelIndex> family_indices(MomentFamily family, int C);

/// Closed-form size of family_indices(family, C).
long family_count(MomentFamily family, int C);

/// Basis value V(r, theta) of one family member on the unit disk.
std::complex<double> basis_value(MomentFamily family, KernelIndex idx, double r, double theta);

/// Continuum normalization constant of one family member, i.e. the factor
/// in moment = norm * <f, V> that makes reconstruction f = sum moment * V.
double moment_norm(MomentFamily family, KernelIndex idx);

/// Direct projection over pixel centers inside the inscribed disk:
///   moment = norm * sum f(x,y) conj(V(r,theta)) dA,
/// with the half-pixel-inset disk mapping shared by the polar resampler.
std::vector<std::pair<KernelIndex, std::complex<double>>> compute_moments(const GrayImage& img,
                                                                          MomentFamily family, int C);

/// Synthesis f_hat = sum moment * V over the disk; exterior pixels are 0.
/// Numerical blow-up at high order is reproduced, not trapped.
GrayImage reconstruct_from_moments(const std::vector<std::pair<KernelIndex, std::complex<double>>>& moments,
                                   MomentFamily family, int size);

/// Sampled synthesis matrix on a size x size disk: one column per admitted
/// index, one row per disk pixel, entries V * sqrt(dA). Columns carry the
/// family's raw basis values, so the conditioning reflects both the norm
/// spread across orders and the pixel-quadrature degradation as C grows.
Eigen::MatrixXcd design_matrix(MomentFamily family, int C, int size);

}  // namespace psept
