#include "psept/bases.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace psept {

double radial_basis(int n, int k, int n_r) {
    if (n < 0 || n >= n_r || k < 0 || k >= n_r) throw std::out_of_range("radial_basis index out of range");
    const double lambda = n == 0 ? std::sqrt(1.0 / n_r) : std::sqrt(2.0 / n_r);
    return lambda * std::cos(M_PI * n * (k + 0.5) / n_r);
}

std::complex<double> angular_basis(int m, int j, int n_theta) {
    if (j < 0 || j >= n_theta || m < -n_theta / 2 || m >= n_theta / 2)
        throw std::out_of_range("angular_basis index out of range");
    const double theta = -M_PI + 2.0 * M_PI * j / n_theta;
    return std::polar(1.0 / std::sqrt(static_cast<double>(n_theta)), m * theta);
}

std::complex<double> kernel(KernelIndex idx, int k, int j, const PolarGrid& grid) {
    return radial_basis(idx.n, k, grid.n_r) * angular_basis(idx.m, j, grid.n_theta);
}

std::vector<KernelIndex> full_order_set(const PolarGrid& grid) {
    std::vector<KernelIndex> orders;
    orders.reserve(static_cast<size_t>(grid.n_r) * grid.n_theta);
    for (int n = 0; n < grid.n_r; ++n)
        for (int m = -grid.n_theta / 2; m < grid.n_theta / 2; ++m) orders.push_back({n, m});
    return orders;
}

Eigen::MatrixXcd build_kernel_matrix(const PolarGrid& grid, const std::vector<KernelIndex>& orders) {
    if (orders.empty()) throw std::invalid_argument("build_kernel_matrix needs at least one order");
    std::set<KernelIndex> seen(orders.begin(), orders.end());
    if (seen.size() != orders.size()) throw std::invalid_argument("duplicate kernel indices");

    const int n_r = grid.n_r, n_theta = grid.n_theta;
    Eigen::MatrixXcd mat(static_cast<Eigen::Index>(orders.size()),
                         static_cast<Eigen::Index>(n_r) * n_theta);
    for (size_t i = 0; i < orders.size(); ++i) {
        // Precompute the two factors; the row is their outer product.
        Eigen::VectorXd radial(n_r);
        for (int k = 0; k < n_r; ++k) radial[k] = radial_basis(orders[i].n, k, n_r);
        for (int j = 0; j < n_theta; ++j) {
            const std::complex<double> ang = angular_basis(orders[i].m, j, n_theta);
            for (int k = 0; k < n_r; ++k)
                mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j) * n_r + k) = radial[k] * ang;
        }
    }
    return mat;
}

}  // namespace psept
