#include "psept/metrics.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace psept {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string repr(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Accumulates squared differences over the selected pixel set.
void accumulate(const GrayImage& a, const GrayImage& b, Mask mask, double& sum_sq, double& max_abs,
                long& count) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument("image dimensions differ");
    const int w = a.width(), h = a.height();
    const double cx = 0.5 * (w - 1), cy = 0.5 * (h - 1);
    const double s = 0.5 * std::min(w, h) - 0.5;
    sum_sq = 0.0;
    max_abs = 0.0;
    count = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (mask == Mask::disk) {
                const double dx = x - cx, dy = y - cy;
                if (dx * dx + dy * dy > s * s) continue;
            }
            const double d = a.pixels(y, x) - b.pixels(y, x);
            sum_sq += d * d;
            max_abs = std::max(max_abs, std::abs(d));
            ++count;
        }
}

}  // namespace

double rmse(const GrayImage& a, const GrayImage& b, Mask mask) {
    double sum_sq, max_abs;
    long count;
    accumulate(a, b, mask, sum_sq, max_abs, count);
    return count > 0 ? std::sqrt(sum_sq / count) : 0.0;
}

double psnr(const GrayImage& a, const GrayImage& b, double peak, Mask mask) {
    double sum_sq, max_abs;
    long count;
    accumulate(a, b, mask, sum_sq, max_abs, count);
    if (count == 0 || sum_sq == 0.0) return kInf;
    return 10.0 * std::log10(peak * peak * count / sum_sq);
}

QualityReport quality_report(const GrayImage& a, const GrayImage& b, double peak, Mask mask) {
    QualityReport r;
    double sum_sq;
    accumulate(a, b, mask, sum_sq, r.max_abs, r.n_pixels);
    r.rmse = r.n_pixels > 0 ? std::sqrt(sum_sq / r.n_pixels) : 0.0;
    r.psnr_db = r.rmse == 0.0 ? kInf : 10.0 * std::log10(peak * peak / (r.rmse * r.rmse));
    return r;
}

std::string QualityReport::csv_row() const {
    return repr(rmse) + "," + repr(psnr_db) + "," + repr(max_abs) + "," + std::to_string(n_pixels);
}

std::string QualityReport::json() const {
    return "{\"rmse\":" + repr(rmse) + ",\"psnr_db\":" + (std::isinf(psnr_db) ? "\"inf\"" : repr(psnr_db)) +
           ",\"max_abs\":" + repr(max_abs) + ",\"n_pixels\":" + std::to_string(n_pixels) + "}";
}

double euclidean_distance(const Eigen::VectorXd& v1, const Eigen::VectorXd& v2, bool normalize) {
    if (v1.size() != v2.size()) throw std::invalid_argument("feature vector lengths differ");
    if (!normalize) return (v1 - v2).norm();
    const double n1 = v1.norm(), n2 = v2.norm();
    Eigen::VectorXd a = n1 > 0.0 ? Eigen::VectorXd(v1 / n1) : v1;
    Eigen::VectorXd b = n2 > 0.0 ? Eigen::VectorXd(v2 / n2) : v2;
    return (a - b).norm();
}

namespace {
// JacobiSVD handles real and complex alike and is run-to-run
// deterministic; the QR preconditioner keeps tall design matrices cheap.
template <typename Matrix>
double cond_impl(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("empty matrix");
    Eigen::JacobiSVD<Matrix> svd(m);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv.maxCoeff(), smin = sv.minCoeff();
    if (smin < 1e-300) return kInf;
    return smax / smin;
}
}  // namespace

double condition_number(const Eigen::MatrixXcd& m) { return cond_impl(m); }
double condition_number(const Eigen::MatrixXd& m) { return cond_impl(m); }

double orthogonality_error(const Eigen::MatrixXcd& gram) {
    if (gram.rows() != gram.cols()) throw std::invalid_argument("gram matrix must be square");
    Eigen::MatrixXcd d = gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
    return d.cwiseAbs().maxCoeff();
}

double disk_energy(const PolarImage& polar) {
    const PolarGrid& g = polar.grid;
    const double dr = g.n_r > 1 ? g.r_max / (g.n_r - 1) : 0.0;
    const double dtheta = 2.0 * M_PI / g.n_theta;
    double acc = 0.0;
    for (int j = 0; j < g.n_theta; ++j)
        for (int k = 0; k < g.n_r; ++k)
            acc += polar.samples(j, k) * polar.samples(j, k) * g.weights[k];
    return acc * dr * dtheta;
}

}  // namespace psept
