#include "psept/baselines.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace psept {

namespace {

using Cplx = std::complex<double>;

constexpr double kLogDoubleMax = 709.78;

// Log-gamma of a positive integer argument: lgamma(v + 1) = log(v!).
double log_factorial(int v) { return std::lgamma(static_cast<double>(v) + 1.0); }

// Zernike radial coefficients over powers of r^2: returns q with
// R(r) = r^{m_abs} * sum_j q[j] * (r^2)^j, j = 0..(n-m_abs)/2.
Eigen::VectorXd zernike_radial_coeffs(int n, int m_abs) {
    if (m_abs < 0 || m_abs > n) throw std::invalid_argument("zernike radial needs 0 <= |m| <= n");
    if ((n - m_abs) % 2 != 0) throw std::invalid_argument("zernike radial parity violated");
    const int t = (n - m_abs) / 2;
    Eigen::VectorXd q(t + 1);
    for (int s = 0; s <= t; ++s) {
        const double lg = log_factorial(n - s) - log_factorial(s) -
                          log_factorial((n + m_abs) / 2 - s) - log_factorial(t - s);
        if (lg > kLogDoubleMax) throw PrecisionLossError("zernike radial coefficient overflows double");
        q[t - s] = (s % 2 == 0 ? 1.0 : -1.0) * std::exp(lg);
    }
    return q;
}

// Pseudo-Zernike radial coefficients over powers of r: returns q with
// R(r) = r^{m_abs} * sum_j q[j] * r^j, j = 0..(n-m_abs).
Eigen::VectorXd pseudo_zernike_radial_coeffs(int n, int m_abs) {
    if (m_abs < 0 || m_abs > n) throw std::invalid_argument("pseudo-zernike radial needs 0 <= |m| <= n");
    const int t = n - m_abs;
    Eigen::VectorXd q(t + 1);
    for (int s = 0; s <= t; ++s) {
        const double lg = log_factorial(2 * n + 1 - s) - log_factorial(s) -
                          log_factorial(n - m_abs - s) - log_factorial(n + m_abs + 1 - s);
        if (lg > kLogDoubleMax) throw PrecisionLossError("pseudo-zernike radial coefficient overflows double");
        q[t - s] = (s % 2 == 0 ? 1.0 : -1.0) * std::exp(lg);
    }
    return q;
}

double horner(const Eigen::VectorXd& q, double u) {
    double acc = 0.0;
    for (int j = static_cast<int>(q.size()) - 1; j >= 0; --j) acc = acc * u + q[j];
    return acc;
}

// Pixel centers inside the inscribed disk, mapped to the unit disk with
// the same half-pixel-inset, centered convention as the polar resampler.
struct DiskSamples {
    Eigen::ArrayXd r, r2, theta, f;
    std::vector<int> xs, ys;
    double dA = 0.0;
};

DiskSamples disk_samples(const GrayImage* img, int width, int height) {
    DiskSamples d;
    const double cx = 0.5 * (width - 1), cy = 0.5 * (height - 1);
    const double s = 0.5 * std::min(width, height) - 0.5;
    std::vector<double> r, theta, f;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double dx = (x - cx) / s, dy = (y - cy) / s;
            const double rr = std::hypot(dx, dy);
            if (rr > 1.0) continue;
            r.push_back(rr);
            theta.push_back(std::atan2(dy, dx));
            f.push_back(img ? img->pixels(y, x) : 0.0);
            d.xs.push_back(x);
            d.ys.push_back(y);
        }
    const auto n = static_cast<Eigen::Index>(r.size());
    d.r = Eigen::Map<Eigen::ArrayXd>(r.data(), n);
    d.r2 = d.r.square();
    d.theta = Eigen::Map<Eigen::ArrayXd>(theta.data(), n);
    d.f = Eigen::Map<Eigen::ArrayXd>(f.data(), n);
    d.dA = 1.0 / (s * s);
    return d;
}

// The largest-magnitude radial coefficients live at the top order; probing
// them up front surfaces precision loss before any projection work.
void probe_order_overflow(MomentFamily family, int C) {
    if (C < 1) return;
    if (family == MomentFamily::zernike) zernike_radial_coeffs(C, C % 2);
    if (family == MomentFamily::pseudo_zernike) pseudo_zernike_radial_coeffs(C, 0);
}

// Radial factor of one family member over all disk samples. Real families
// are promoted to complex so every family shares one projection path.
Eigen::ArrayXcd radial_values(MomentFamily family, KernelIndex idx, const DiskSamples& d) {
    const int m_abs = std::abs(idx.m);
    switch (family) {
        case MomentFamily::zernike: {
            const Eigen::VectorXd q = zernike_radial_coeffs(idx.n, m_abs);
            Eigen::ArrayXd v(d.r.size());
            for (Eigen::Index i = 0; i < d.r.size(); ++i)
                v[i] = horner(q, d.r2[i]) * std::pow(d.r[i], m_abs);
            return v.cast<Cplx>();
        }
        case MomentFamily::pseudo_zernike: {
            const Eigen::VectorXd q = pseudo_zernike_radial_coeffs(idx.n, m_abs);
            Eigen::ArrayXd v(d.r.size());
            for (Eigen::Index i = 0; i < d.r.size(); ++i)
                v[i] = horner(q, d.r[i]) * std::pow(d.r[i], m_abs);
            return v.cast<Cplx>();
        }
        case MomentFamily::pct:
            return (M_PI * idx.n * d.r2).cos().cast<Cplx>();
        case MomentFamily::pst:
            return (M_PI * idx.n * d.r2).sin().cast<Cplx>();
        case MomentFamily::pcet: {
            Eigen::ArrayXcd v(d.r.size());
            for (Eigen::Index i = 0; i < d.r.size(); ++i)
                v[i] = std::polar(1.0, 2.0 * M_PI * idx.n * d.r2[i]);
            return v;
        }
    }
    throw std::logic_error("unknown moment family");
}

Eigen::ArrayXcd angular_values(int m, const DiskSamples& d) {
    Eigen::ArrayXcd v(d.theta.size());
    for (Eigen::Index i = 0; i < d.theta.size(); ++i) v[i] = std::polar(1.0, m * d.theta[i]);
    return v;
}

}  // namespace

const char* family_name(MomentFamily family) {
    switch (family) {
        case MomentFamily::zernike: return "zernike";
        case MomentFamily::pseudo_zernike: return "pzernike";
        case MomentFamily::pct: return "pct";
        case MomentFamily::pst: return "pst";
        case MomentFamily::pcet: return "pcet";
    }
    return "?";
}

SelectionRule family_rule(MomentFamily family, int C) {
    switch (family) {
        case MomentFamily::zernike: return {SelectionKind::radial_with_parity, C};
        case MomentFamily::pseudo_zernike: return {SelectionKind::radial, C};
        case MomentFamily::pct:
        case MomentFamily::pst: return {SelectionKind::pyramidal, C};
        case MomentFamily::pcet: return {SelectionKind::pcet_weighted, C};
    }
    return {};
}

double zernike_radial(int n, int m_abs, double r) {
    const Eigen::VectorXd q = zernike_radial_coeffs(n, m_abs);
    return horner(q, r * r) * std::pow(r, m_abs);
}

double pseudo_zernike_radial(int n, int m_abs, double r) {
    const Eigen::VectorXd q = pseudo_zernike_radial_coeffs(n, m_abs);
    return horner(q, r) * std::pow(r, m_abs);
}

std::vector<KernelIndex> family_indices(MomentFamily family, int C) {
    std::vector<KernelIndex> out;
    switch (family) {
        case MomentFamily::zernike:
            for (int n = 0; n <= C; ++n)
                for (int m = -n; m <= n; ++m)
                    if ((n - std::abs(m)) % 2 == 0) out.push_back({n, m});
            break;
        case MomentFamily::pseudo_zernike:
            for (int n = 0; n <= C; ++n)
                for (int m = -n; m <= n; ++m) out.push_back({n, m});
            break;
        case MomentFamily::pct:
            for (int n = 0; n <= C; ++n)
                for (int m = -(C - n); m <= C - n; ++m) out.push_back({n, m});
            break;
        case MomentFamily::pst:
            for (int n = 1; n <= C; ++n)
                for (int m = -(C - n); m <= C - n; ++m) out.push_back({n, m});
            break;
        case MomentFamily::pcet:
            for (int n = -C / 2; n <= C / 2; ++n)
                for (int m = -(C - 2 * std::abs(n)); m <= C - 2 * std::abs(n); ++m)
                    out.push_back({n, m});
            break;
    }
    return out;
}

std::complex<double> basis_value(MomentFamily family, KernelIndex idx, double r, double theta) {
    const Cplx ang = std::polar(1.0, idx.m * theta);
    switch (family) {
        case MomentFamily::zernike: return zernike_radial(idx.n, std::abs(idx.m), r) * ang;
        case MomentFamily::pseudo_zernike: return pseudo_zernike_radial(idx.n, std::abs(idx.m), r) * ang;
        case MomentFamily::pct: return std::cos(M_PI * idx.n * r * r) * ang;
        case MomentFamily::pst: return std::sin(M_PI * idx.n * r * r) * ang;
        case MomentFamily::pcet: return std::polar(1.0, 2.0 * M_PI * idx.n * r * r) * ang;
    }
    throw std::logic_error("unknown moment family");
}

double moment_norm(MomentFamily family, KernelIndex idx) {
    switch (family) {
        case MomentFamily::zernike:
        case MomentFamily::pseudo_zernike: return (idx.n + 1) / M_PI;
        case MomentFamily::pct: return idx.n == 0 ? 1.0 / M_PI : 2.0 / M_PI;
        case MomentFamily::pst: return 2.0 / M_PI;
        case MomentFamily::pcet: return 1.0 / M_PI;
    }
    throw std::logic_error("unknown moment family");
}

std::vector<std::pair<KernelIndex, std::complex<double>>> compute_moments(const GrayImage& img,
                                                                          MomentFamily family, int C) {
    if (C < 0) throw std::invalid_argument("C must be >= 0");
    probe_order_overflow(family, C);
    const DiskSamples d = disk_samples(&img, img.width(), img.height());
    const auto indices = family_indices(family, C);

    std::vector<std::pair<KernelIndex, Cplx>> out;
    out.reserve(indices.size());
    std::map<std::pair<int, int>, Eigen::ArrayXcd> radial_cache;
    std::map<int, Eigen::ArrayXcd> angular_cache;
    for (const auto& idx : indices) {
        const bool radial_uses_m = family == MomentFamily::zernike || family == MomentFamily::pseudo_zernike;
        const std::pair<int, int> rkey{idx.n, radial_uses_m ? std::abs(idx.m) : 0};
        auto rit = radial_cache.find(rkey);
        if (rit == radial_cache.end()) rit = radial_cache.emplace(rkey, radial_values(family, idx, d)).first;
        auto ait = angular_cache.find(idx.m);
        if (ait == angular_cache.end()) ait = angular_cache.emplace(idx.m, angular_values(idx.m, d)).first;

        const Cplx acc = (d.f.cast<Cplx>() * (rit->second * ait->second).conjugate()).sum();
        out.push_back({idx, moment_norm(family, idx) * d.dA * acc});
    }
    return out;
}

GrayImage reconstruct_from_moments(const std::vector<std::pair<KernelIndex, std::complex<double>>>& moments,
                                   MomentFamily family, int size) {
    const DiskSamples d = disk_samples(nullptr, size, size);
    Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(d.r.size());
    std::map<std::pair<int, int>, Eigen::ArrayXcd> radial_cache;
    std::map<int, Eigen::ArrayXcd> angular_cache;
    for (const auto& [idx, moment] : moments) {
        const bool radial_uses_m = family == MomentFamily::zernike || family == MomentFamily::pseudo_zernike;
        const std::pair<int, int> rkey{idx.n, radial_uses_m ? std::abs(idx.m) : 0};
        auto rit = radial_cache.find(rkey);
        if (rit == radial_cache.end()) rit = radial_cache.emplace(rkey, radial_values(family, idx, d)).first;
        auto ait = angular_cache.find(idx.m);
        if (ait == angular_cache.end()) ait = angular_cache.emplace(idx.m, angular_values(idx.m, d)).first;
        acc += moment * rit->second * ait->second;
    }

    GrayImage out;
    out.range = {0.0, 1.0};
    out.pixels = Eigen::ArrayXXd::Zero(size, size);
    for (Eigen::Index i = 0; i < acc.size(); ++i) out.pixels(d.ys[i], d.xs[i]) = acc[i].real();
    return out;
}

long family_count(MomentFamily family, int C) {
    const long c = C;
    switch (family) {
        case MomentFamily::zernike: return (c + 1) * (c + 2) / 2;
        case MomentFamily::pseudo_zernike: return (c + 1) * (c + 1);
        case MomentFamily::pct: return (c + 1) * (c + 1);
        case MomentFamily::pst: return c * c;
        case MomentFamily::pcet: {
            long count = 0;
            for (int n = -C / 2; n <= C / 2; ++n) count += 2 * (c - 2 * std::abs(n)) + 1;
            return count;
        }
    }
    return 0;
}

Eigen::MatrixXcd design_matrix(MomentFamily family, int C, int size) {
    const DiskSamples d = disk_samples(nullptr, size, size);
    const auto indices = family_indices(family, C);
    Eigen::MatrixXcd mat(d.r.size(), static_cast<Eigen::Index>(indices.size()));
    const double sqrt_dA = std::sqrt(d.dA);
    for (size_t i = 0; i < indices.size(); ++i) {
        const Eigen::ArrayXcd col = radial_values(family, indices[i], d) * angular_values(indices[i].m, d);
        mat.col(static_cast<Eigen::Index>(i)) = (col * sqrt_dA).matrix();
    }
    return mat;
}

}  // namespace psept
