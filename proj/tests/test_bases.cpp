#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "psept/bases.hpp"
#include "psept/metrics.hpp"

using namespace psept;

TEST_CASE("radial basis values and orthonormality") {
    for (int k = 0; k < 4; ++k) CHECK(radial_basis(0, k, 4) == doctest::Approx(0.5));
    CHECK(radial_basis(1, 0, 2) == doctest::Approx(0.7071067811865476));

    // Gram over n_r = 8
    for (int n = 0; n < 8; ++n)
        for (int n2 = 0; n2 < 8; ++n2) {
            double acc = 0.0;
            for (int k = 0; k < 8; ++k) acc += radial_basis(n, k, 8) * radial_basis(n2, k, 8);
            CHECK(std::abs(acc - (n == n2 ? 1.0 : 0.0)) < 1e-12);
        }

    CHECK_THROWS_AS(radial_basis(8, 0, 8), std::out_of_range);
    CHECK_THROWS_AS(radial_basis(0, -1, 8), std::out_of_range);
}

TEST_CASE("angular basis values and orthonormality") {
    for (int j = 0; j < 16; ++j) {
        CHECK(angular_basis(0, j, 16).real() == doctest::Approx(0.25));
        CHECK(angular_basis(0, j, 16).imag() == doctest::Approx(0.0));
    }

    const auto v = angular_basis(1, 2, 8);  // theta = -pi/2
    CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(-1.0 / std::sqrt(8.0)));

    for (int m = -4; m < 4; ++m)
        for (int m2 = -4; m2 < 4; ++m2) {
            std::complex<double> acc = 0.0;
            for (int j = 0; j < 8; ++j) acc += angular_basis(m, j, 8) * std::conj(angular_basis(m2, j, 8));
            CHECK(std::abs(acc - (m == m2 ? 1.0 : 0.0)) < 1e-12);
        }

    CHECK_THROWS_AS(angular_basis(4, 0, 8), std::out_of_range);   // beyond the signed range
    CHECK_NOTHROW(angular_basis(-4, 0, 8));                       // self-conjugate mode is valid
}

TEST_CASE("kernel factorization is exact") {
    PolarGrid grid = build_grid(8, 16);

    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 16; ++j)
            CHECK(kernel({0, 0}, k, j, build_grid(4, 16)).real() == doctest::Approx(0.125));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const int n = static_cast<int>(rng() % 8);
        const int m = static_cast<int>(rng() % 16) - 8;
        const int k = static_cast<int>(rng() % 8);
        const int j = static_cast<int>(rng() % 16);
        const auto lhs = kernel({n, m}, k, j, grid);
        const auto rhs = radial_basis(n, k, 8) * angular_basis(m, j, 16);
        CHECK(lhs == rhs);  // bit-identical by construction
    }
}

TEST_CASE("kernel (3,2) has three radial sign changes") {
    PolarGrid grid = build_grid(16, 16);
    for (int j = 0; j < 16; ++j) {
        if (std::abs(angular_basis(2, j, 16).real()) < 0.05) continue;
        int changes = 0;
        double prev = kernel({3, 2}, 0, j, grid).real();
        for (int k = 1; k < 16; ++k) {
            const double cur = kernel({3, 2}, k, j, grid).real();
            if (prev * cur < 0.0) ++changes;
            prev = cur;
        }
        CHECK(changes == 3);
    }
}

TEST_CASE("conjugate symmetry in the angular order") {
    PolarGrid grid = build_grid(6, 12);
    for (int n = 0; n < 6; ++n)
        for (int m = -5; m < 6; ++m)
            for (int k = 0; k < 6; ++k)
                for (int j = 0; j < 12; ++j)
                    CHECK(std::abs(kernel({n, -m}, k, j, grid) - std::conj(kernel({n, m}, k, j, grid))) <
                          1e-15);
}

TEST_CASE("kernel matrix: gram identity, unitarity, conditioning") {
    PolarGrid grid = build_grid(4, 8);
    const Eigen::MatrixXcd mat = build_kernel_matrix(grid, full_order_set(grid));
    CHECK(mat.rows() == 32);
    CHECK(mat.cols() == 32);
    CHECK(orthogonality_error(mat * mat.adjoint()) < 1e-12);
    CHECK(orthogonality_error(mat.adjoint() * mat) < 1e-12);
    CHECK(std::abs(condition_number(mat) - 1.0) < 1e-10);

    const Eigen::MatrixXcd single = build_kernel_matrix(grid, {{0, 0}});
    CHECK(single.rows() == 1);
    const double expect = 1.0 / std::sqrt(32.0);
    for (int c = 0; c < 32; ++c) {
        CHECK(single(0, c).real() == doctest::Approx(expect));
        CHECK(single(0, c).imag() == doctest::Approx(0.0));
    }

    CHECK_THROWS_AS(build_kernel_matrix(grid, {{0, 0}, {0, 0}}), std::invalid_argument);

    // exhaustive pairwise orthonormality at a second size
    PolarGrid g2 = build_grid(8, 16);
    const Eigen::MatrixXcd m2 = build_kernel_matrix(g2, full_order_set(g2));
    CHECK(orthogonality_error(m2 * m2.adjoint()) < 1e-12);
    CHECK(orthogonality_error(m2.adjoint() * m2) < 1e-12);
}

TEST_CASE("kernel matrix row layout is j-outer k-inner") {
    PolarGrid grid = build_grid(3, 4);
    const Eigen::MatrixXcd mat = build_kernel_matrix(grid, {{2, 1}});
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(mat(0, j * 3 + k) - kernel({2, 1}, k, j, grid)) == 0.0);
}
