#include "psept/transform.hpp"

#include <unsupported/Eigen/FFT>

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <vector>

#include "psept/dct.hpp"
#include "psept/image_io.hpp"

static_assert(std::endian::native == std::endian::little,
              "coefficient container I/O assumes a little-endian host");

namespace psept {

namespace {

using Cplx = std::complex<double>;

Eigen::VectorXd radial_scalings(int n_r) {
    Eigen::VectorXd lambda(n_r);
    lambda[0] = std::sqrt(1.0 / n_r);
    for (int n = 1; n < n_r; ++n) lambda[n] = std::sqrt(2.0 / n_r);
    return lambda;
}

// e^{i m pi} for integer m.
double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

void check_finite(const Eigen::MatrixXcd& samples) {
    if (!samples.allFinite()) throw std::invalid_argument("non-finite polar samples");
}

CoefficientTable forward_impl(const Eigen::MatrixXcd& g, const PolarGrid& grid, Convention convention) {
    check_finite(g);
    const int n_r = grid.n_r, n_theta = grid.n_theta;

    CoefficientTable out;
    out.grid = grid;
    out.convention = convention;
    out.values.resize(n_r, n_theta);

    // Stage 1: cosine transform of every angular slice. The literal mode
    // weights each ring by w_k and uses the flat sqrt(2/n_r) scaling for
    // every mode, constant mode included.
    Eigen::MatrixXcd stage1(n_theta, n_r);  // (j, n)
    const Eigen::VectorXd lambda = radial_scalings(n_r);
    for (int j = 0; j < n_theta; ++j) {
        Eigen::VectorXcd slice = g.row(j).transpose();
        if (convention == Convention::paper_literal)
            slice.array() *= grid.weights.cast<Cplx>();
        Eigen::VectorXcd s = dct2(slice);
        if (convention == Convention::orthonormal) {
            s.array() *= lambda.array().cast<Cplx>();
        } else {
            s *= std::sqrt(2.0 / n_r);
        }
        stage1.row(j) = s.transpose();
    }

    // Stage 2: Fourier transform across slices for every radial mode. The
    // grid's angle origin at -pi contributes the (-1)^m factor relative to
    // an index-origin transform.
    Eigen::FFT<double> fft;
    const double ang_scale = convention == Convention::orthonormal
                                 ? 1.0 / std::sqrt(static_cast<double>(n_theta))
                                 : 1.0 / (std::sqrt(static_cast<double>(n_theta)) * n_r * n_theta);
    std::vector<Cplx> in(n_theta), spec(n_theta);
    for (int n = 0; n < n_r; ++n) {
        for (int j = 0; j < n_theta; ++j) in[j] = stage1(j, n);
        fft.fwd(spec, in);
        for (int mi = 0; mi < n_theta; ++mi) {
            const int m = mi - n_theta / 2;
            const int q = (m + n_theta) % n_theta;
            out.values(n, mi) = ang_scale * parity(m) * spec[q];
        }
    }
    return out;
}

}  // namespace

CoefficientTable forward(const ComplexPolarImage& polar, Convention convention) {
    return forward_impl(polar.samples.matrix(), polar.grid, convention);
}

CoefficientTable forward(const PolarImage& polar, Convention convention) {
    return forward_impl(polar.samples.cast<Cplx>().matrix(), polar.grid, convention);
}

ComplexPolarImage inverse(const CoefficientTable& coeffs) {
    if (coeffs.convention != Convention::orthonormal)
        throw std::invalid_argument("the literal-normalization convention defines no inverse");
    const PolarGrid& grid = coeffs.grid;
    const int n_r = grid.n_r, n_theta = grid.n_theta;

    // Stage 1: angular synthesis per radial mode.
    Eigen::MatrixXcd stage1(n_theta, n_r);  // (j, n)
    Eigen::FFT<double> fft;
    const double ang_scale = std::sqrt(static_cast<double>(n_theta));
    std::vector<Cplx> spec(n_theta), slice(n_theta);
    for (int n = 0; n < n_r; ++n) {
        for (int mi = 0; mi < n_theta; ++mi) {
            const int m = mi - n_theta / 2;
            const int q = (m + n_theta) % n_theta;
            spec[q] = parity(m) * coeffs.values(n, mi);
        }
        fft.inv(slice, spec);
        for (int j = 0; j < n_theta; ++j) stage1(j, n) = ang_scale * slice[j];
    }

    // Stage 2: radial synthesis per angular slice.
    ComplexPolarImage out;
    out.grid = grid;
    out.samples.resize(n_theta, n_r);
    const Eigen::VectorXd lambda = radial_scalings(n_r);
    for (int j = 0; j < n_theta; ++j) {
        Eigen::VectorXcd y = stage1.row(j).transpose();
        y.array() *= lambda.array().cast<Cplx>();
        out.samples.row(j) = dct3(y).transpose().array();
    }
    return out;
}

CoefficientTable forward_direct(const ComplexPolarImage& polar, Convention convention) {
    check_finite(polar.samples.matrix());
    const PolarGrid& grid = polar.grid;
    const int n_r = grid.n_r, n_theta = grid.n_theta;
    CoefficientTable out;
    out.grid = grid;
    out.convention = convention;
    out.values.setZero(n_r, n_theta);
    for (int n = 0; n < n_r; ++n) {
        for (int mi = 0; mi < n_theta; ++mi) {
            const int m = out.m_of(mi);
            Cplx acc = 0.0;
            for (int j = 0; j < n_theta; ++j) {
                for (int k = 0; k < n_r; ++k) {
                    if (convention == Convention::orthonormal) {
                        acc += polar.samples(j, k) * std::conj(kernel({n, m}, k, j, grid));
                    } else {
                        const Cplx lit = std::sqrt(2.0 / (n_r * n_theta)) *
                                         std::cos(M_PI * n * (k + 0.5) / n_r) *
                                         std::polar(1.0, m * grid.thetas[j]);
                        acc += polar.samples(j, k) * std::conj(lit) * grid.weights[k];
                    }
                }
            }
            if (convention == Convention::paper_literal) acc /= static_cast<double>(n_r) * n_theta;
            out.values(n, mi) = acc;
        }
    }
    return out;
}

ComplexPolarImage inverse_direct(const CoefficientTable& coeffs) {
    if (coeffs.convention != Convention::orthonormal)
        throw std::invalid_argument("the literal-normalization convention defines no inverse");
    const PolarGrid& grid = coeffs.grid;
    ComplexPolarImage out;
    out.grid = grid;
    out.samples.setZero(grid.n_theta, grid.n_r);
    for (int j = 0; j < grid.n_theta; ++j)
        for (int k = 0; k < grid.n_r; ++k) {
            Cplx acc = 0.0;
            for (int n = 0; n < grid.n_r; ++n)
                for (int mi = 0; mi < grid.n_theta; ++mi)
                    acc += coeffs.values(n, mi) * kernel({n, coeffs.m_of(mi)}, k, j, grid);
            out.samples(j, k) = acc;
        }
    return out;
}

CoefficientTable truncate(const CoefficientTable& coeffs, int n_cap, int m_cap) {
    const int n_r = coeffs.grid.n_r, n_theta = coeffs.grid.n_theta;
    if (n_cap < 0 || n_cap >= n_r) throw std::out_of_range("radial cap out of range");
    if (m_cap < 0 || m_cap > n_theta / 2 - 1) throw std::out_of_range("angular cap out of range");
    CoefficientTable out = coeffs;
    for (int n = 0; n < n_r; ++n)
        for (int mi = 0; mi < n_theta; ++mi)
            if (n > n_cap || std::abs(out.m_of(mi)) > m_cap) out.values(n, mi) = 0.0;
    return out;
}

CoefficientTable rotate_coefficients(const CoefficientTable& coeffs, double alpha) {
    if (coeffs.convention != Convention::orthonormal)
        throw std::invalid_argument("rotation phases are defined for the orthonormal convention");
    CoefficientTable out = coeffs;
    for (int mi = 0; mi < coeffs.grid.n_theta; ++mi) {
        const Cplx phase = std::polar(1.0, -coeffs.m_of(mi) * alpha);
        out.values.col(mi) *= phase;
    }
    return out;
}

double energy_spatial(const PolarImage& polar) { return polar.samples.square().sum(); }
double energy_spatial(const ComplexPolarImage& polar) { return polar.samples.abs2().sum(); }

double energy_spectral(const CoefficientTable& coeffs) {
    if (coeffs.convention != Convention::orthonormal)
        throw std::invalid_argument("spectral energy is defined for the orthonormal convention");
    return coeffs.values.array().abs2().sum();
}

namespace {
template <typename T>
void write_pod(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
template <typename T>
T read_pod(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw IoError(IoError::Kind::truncated, "coefficient container ends early");
    return v;
}
constexpr char kMagic[6] = {'P', 'S', 'E', 'P', 'T', '1'};
}  // namespace

void save_coefficients(const CoefficientTable& coeffs, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(IoError::Kind::unreadable, "cannot open " + path.string() + " for writing");
    out.write(kMagic, sizeof(kMagic));
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(coeffs.grid.n_r));
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(coeffs.grid.n_theta));
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), coeffs.grid.r_max);
    const auto len = static_cast<std::uint16_t>(res.ptr - buf);
    write_pod<std::uint16_t>(out, len);
    out.write(buf, len);
    write_pod<std::uint8_t>(out, coeffs.convention == Convention::orthonormal ? 0 : 1);
    for (int n = 0; n < coeffs.grid.n_r; ++n)
        for (int mi = 0; mi < coeffs.grid.n_theta; ++mi) {
            write_pod<double>(out, coeffs.values(n, mi).real());
            write_pod<double>(out, coeffs.values(n, mi).imag());
        }
    if (!out) throw IoError(IoError::Kind::bad_write, "write failed: " + path.string());
}

CoefficientTable load_coefficients(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoError::Kind::unreadable, "cannot open " + path.string());
    char magic[6];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError(IoError::Kind::bad_magic, "not a coefficient container");
    const auto n_r = read_pod<std::uint32_t>(in);
    const auto n_theta = read_pod<std::uint32_t>(in);
    const auto len = read_pod<std::uint16_t>(in);
    std::string rmax_str(len, '\0');
    in.read(rmax_str.data(), len);
    if (!in) throw IoError(IoError::Kind::truncated, "coefficient container ends early");
    double r_max = 0.0;
    auto res = std::from_chars(rmax_str.data(), rmax_str.data() + rmax_str.size(), r_max);
    if (res.ec != std::errc{}) throw IoError(IoError::Kind::bad_header, "bad r_max string");
    const auto tag = read_pod<std::uint8_t>(in);
    if (tag > 1) throw IoError(IoError::Kind::bad_header, "unknown convention tag");

    CoefficientTable out;
    out.grid = build_grid(static_cast<int>(n_r), static_cast<int>(n_theta), r_max);
    out.convention = tag == 0 ? Convention::orthonormal : Convention::paper_literal;
    out.values.resize(n_r, n_theta);
    for (std::uint32_t n = 0; n < n_r; ++n)
        for (std::uint32_t mi = 0; mi < n_theta; ++mi) {
            const double re = read_pod<double>(in);
            const double im = read_pod<double>(in);
            out.values(n, mi) = Cplx(re, im);
        }
    return out;
}

void write_coefficients_csv(const CoefficientTable& coeffs, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(IoError::Kind::unreadable, "cannot open " + path.string() + " for writing");
    out << "n,m,re,im\n";
    char buf[32];
    auto emit = [&](double v) {
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        out.write(buf, res.ptr - buf);
    };
    for (int n = 0; n < coeffs.grid.n_r; ++n)
        for (int mi = 0; mi < coeffs.grid.n_theta; ++mi) {
            out << n << ',' << coeffs.m_of(mi) << ',';
            emit(coeffs.values(n, mi).real());
            out << ',';
            emit(coeffs.values(n, mi).imag());
            out << '\n';
        }
    if (!out) throw IoError(IoError::Kind::bad_write, "write failed: " + path.string());
}

}  // namespace psept
