#pragma once

#include <Eigen/Dense>
#include <string>

#include "psept/image.hpp"
#include "psept/polar_grid.hpp"

namespace psept {

enum class Mask { full, disk };

struct QualityReport {
    double rmse = 0.0;
    double psnr_db = 0.0;  // +infinity when rmse == 0
    double max_abs = 0.0;
    long n_pixels = 0;

    std::string csv_row() const;
    std::string json() const;
};

/// Root-mean-square difference; Mask::disk restricts the mean to pixels
/// inside the inscribed disk.
double rmse(const GrayImage& a, const GrayImage& b, Mask mask = Mask::full);

/// 10 log10(peak^2 / MSE), +infinity for identical inputs.
double psnr(const GrayImage& a, const GrayImage& b, double peak = 1.0, Mask mask = Mask::full);

QualityReport quality_report(const GrayImage& a, const GrayImage& b, double peak = 1.0,
                             Mask mask = Mask::full);

/// L2 distance; when `normalize` is set both vectors are scaled to unit
/// norm first (zero vectors are left untouched).
double euclidean_distance(const Eigen::VectorXd& v1, const Eigen::VectorXd& v2,
                          bool normalize = false);

/// sigma_max / sigma_min from a full SVD; +infinity when sigma_min
/// vanishes. Intended for explicitly materialized validation matrices
/// (<= 4096 per side).
double condition_number(const Eigen::MatrixXcd& m);
double condition_number(const Eigen::MatrixXd& m);

/// Max entrywise deviation of a square matrix from the identity.
double orthogonality_error(const Eigen::MatrixXcd& gram);

/// Quadrature of the disk-measure energy integral of |g|^2 r dr dtheta
/// using the grid's Jacobi weights.
double disk_energy(const PolarImage& polar);

}  // namespace psept
