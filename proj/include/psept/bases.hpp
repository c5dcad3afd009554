#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "psept/polar_grid.hpp"

namespace psept {

/// Index of one tensor-product kernel: radial order n >= 0, signed angular
/// order m. Bound to a grid, n < n_r and -n_theta/2 <= m < n_theta/2.
struct KernelIndex {
    int n = 0;
    int m = 0;
    bool operator==(const KernelIndex&) const = default;
    auto operator<=>(const KernelIndex&) const = default;
};

/// Orthonormal half-sample cosine mode evaluated at ring index k:
///   lambda_n * cos(n pi (k + 1/2) / n_r),
/// lambda_0 = sqrt(1/n_r), lambda_n = sqrt(2/n_r) otherwise. The basis
/// depends on the integer index k only, never on the radius value r_k;
/// that decoupling is what makes the discrete orthogonality exact.
double radial_basis(int n, int k, int n_r);

/// Unit-norm circular harmonic e^{i m theta_j} / sqrt(n_theta) with
/// theta_j = -pi + 2 pi j / n_theta.
std::complex<double> angular_basis(int m, int j, int n_theta);

/// Tensor-product kernel value, exactly the product of the two factors.
std::complex<double> kernel(KernelIndex idx, int k, int j, const PolarGrid& grid);

/// Every valid index of the grid, n-major, m ascending from -n_theta/2.
std::vector<KernelIndex> full_order_set(const PolarGrid& grid);

/// Explicit kernel matrix for validation at small sizes: row i holds
/// K_{orders[i]} flattened over (k, j) with j outer, k inner. Rows are
/// orthonormal; the full square matrix is unitary. Duplicate indices are
/// rejected.
Eigen::MatrixXcd build_kernel_matrix(const PolarGrid& grid, const std::vector<KernelIndex>& orders);

}  // namespace psept
