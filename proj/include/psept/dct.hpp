#pragma once

#include <Eigen/Dense>
#include <complex>

namespace psept {

// Unnormalized half-sample cosine transforms:
//   dct2(x)[n] = sum_k x[k] cos(pi n (k + 1/2) / N)
//   dct3(y)[k] = sum_n y[n] cos(pi n (k + 1/2) / N)
// dct3 is the transpose of dct2; orthonormal scalings are applied by the
// callers. The fast paths run one complex FFT of length N (any N) via the
// even/odd reordering of Makhoul; *_direct are the O(N^2) references used
// as test oracles.

Eigen::VectorXd dct2(const Eigen::VectorXd& x);
Eigen::VectorXd dct3(const Eigen::VectorXd& y);
Eigen::VectorXcd dct2(const Eigen::VectorXcd& x);
Eigen::VectorXcd dct3(const Eigen::VectorXcd& y);

Eigen::VectorXd dct2_direct(const Eigen::VectorXd& x);
Eigen::VectorXd dct3_direct(const Eigen::VectorXd& y);

}  // namespace psept
