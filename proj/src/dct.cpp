#include "psept/dct.hpp"

#include <unsupported/Eigen/FFT>

namespace psept {

namespace {

using Cplx = std::complex<double>;

// dct2 of a real vector: even/odd reorder, one length-N FFT, then the
// quarter-sample phase ramp. S[n] = Re(e^{-i pi n / 2N} * FFT(v)[n]).
Eigen::VectorXd dct2_real(const Eigen::VectorXd& x) {
    const Eigen::Index n = x.size();
    if (n == 1) return x;
    std::vector<Cplx> v(n);
    for (Eigen::Index k = 0; 2 * k < n; ++k) v[k] = x[2 * k];
    for (Eigen::Index k = 0; 2 * k + 1 < n; ++k) v[n - 1 - k] = x[2 * k + 1];
    std::vector<Cplx> V;
    Eigen::FFT<double> fft;
    fft.fwd(V, v);
    Eigen::VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Cplx w = std::polar(1.0, -M_PI * static_cast<double>(i) / (2.0 * n));
        s[i] = (w * V[i]).real();
    }
    return s;
}

// dct3 of a real vector, derived by transposing the dct2 factorization:
// z = FFT(e^{-i pi n / 2N} y[n]); even outputs from the front of Re(z),
// odd outputs from the back.
Eigen::VectorXd dct3_real(const Eigen::VectorXd& y) {
    const Eigen::Index n = y.size();
    if (n == 1) return y;
    std::vector<Cplx> d(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d[i] = std::polar(1.0, -M_PI * static_cast<double>(i) / (2.0 * n)) * y[i];
    std::vector<Cplx> z;
    Eigen::FFT<double> fft;
    fft.fwd(z, d);
    Eigen::VectorXd t(n);
    for (Eigen::Index q = 0; 2 * q < n; ++q) t[2 * q] = z[q].real();
    for (Eigen::Index q = 0; 2 * q + 1 < n; ++q) t[2 * q + 1] = z[n - 1 - q].real();
    return t;
}

}  // namespace

Eigen::VectorXd dct2(const Eigen::VectorXd& x) { return dct2_real(x); }
Eigen::VectorXd dct3(const Eigen::VectorXd& y) { return dct3_real(y); }

Eigen::VectorXcd dct2(const Eigen::VectorXcd& x) {
    Eigen::VectorXcd out(x.size());
    out.real() = dct2_real(x.real());
    out.imag() = dct2_real(x.imag());
    return out;
}

Eigen::VectorXcd dct3(const Eigen::VectorXcd& y) {
    Eigen::VectorXcd out(y.size());
    out.real() = dct3_real(y.real());
    out.imag() = dct3_real(y.imag());
    return out;
}

Eigen::VectorXd dct2_direct(const Eigen::VectorXd& x) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k)
            s[i] += x[k] * std::cos(M_PI * i * (k + 0.5) / n);
    return s;
}

Eigen::VectorXd dct3_direct(const Eigen::VectorXd& y) {
    const Eigen::Index n = y.size();
    Eigen::VectorXd t = Eigen::VectorXd::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index i = 0; i < n; ++i)
            t[k] += y[i] * std::cos(M_PI * i * (k + 0.5) / n);
    return t;
}

}  // namespace psept
