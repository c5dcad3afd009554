#include "psept/features.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace psept {

namespace {
std::atomic<std::uint64_t> g_rule_mismatches{0};

bool admits(SelectionRule rule, int n, int m) {
    const int am = std::abs(m);
    switch (rule.kind) {
        case SelectionKind::pyramidal:
            return n >= 0 && n + am <= rule.C;
        case SelectionKind::radial_with_parity:
            return n >= 0 && n <= rule.C && am <= n && (n - am) % 2 == 0;
        case SelectionKind::radial:
            return n >= 0 && n <= rule.C && am <= n;
        case SelectionKind::pcet_weighted:
            return 2 * std::abs(n) + am <= rule.C;
    }
    return false;
}

std::string repr(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

const char* kind_name(SelectionKind k) {
    switch (k) {
        case SelectionKind::pyramidal: return "pyramidal";
        case SelectionKind::radial_with_parity: return "radial_with_parity";
        case SelectionKind::radial: return "radial";
        case SelectionKind::pcet_weighted: return "pcet_weighted";
    }
    return "?";
}
}  // namespace

long selection_count(SelectionRule rule) {
    const long c = rule.C;
    switch (rule.kind) {
        case SelectionKind::pyramidal:
        case SelectionKind::radial:
            return (c + 1) * (c + 1);
        case SelectionKind::radial_with_parity:
            return (c + 1) * (c + 2) / 2;
        case SelectionKind::pcet_weighted: {
            long count = 0;
            for (int n = -rule.C; n <= rule.C; ++n)
                for (int m = -rule.C; m <= rule.C; ++m)
                    if (admits(rule, n, m)) ++count;
            return count;
        }
    }
    return 0;
}

std::vector<std::pair<KernelIndex, std::complex<double>>> select(const CoefficientTable& coeffs,
                                                                 SelectionRule rule,
                                                                 bool include_nyquist) {
    if (rule.C < 0) throw std::invalid_argument("selection C must be >= 0");
    if (rule.kind != SelectionKind::pyramidal) g_rule_mismatches.fetch_add(1, std::memory_order_relaxed);

    const int n_r = coeffs.grid.n_r, half = coeffs.grid.n_theta / 2;
    std::vector<std::pair<KernelIndex, std::complex<double>>> out;
    for (int n = 0; n < n_r; ++n) {
        for (int m = include_nyquist ? -half : -half + 1; m < half; ++m) {
            if (admits(rule, n, m)) out.push_back({{n, m}, coeffs.at(n, m)});
        }
    }
    return out;
}

std::uint64_t selection_mismatch_warnings() { return g_rule_mismatches.load(); }
void reset_selection_mismatch_warnings() { g_rule_mismatches.store(0); }

std::string FeatureMeta::descriptor() const {
    std::string d = "kind=" + kind + ";family=" + family;
    if (kind == "complex_parts") {
        d += ";rule=" + std::string(kind_name(rule.kind)) + ";C=" + std::to_string(rule.C) +
             ";ordering=" + ordering;
    } else {
        d += ";n_max=" + std::to_string(n_max) + ";k_max=" + std::to_string(k_max) +
             ";ordering=" + ordering;
    }
    return d;
}

FeatureVector magnitude_invariants(const CoefficientTable& coeffs, int n_max, int k_max) {
    if (n_max < 0 || n_max >= coeffs.grid.n_r) throw std::out_of_range("n_max outside the table");
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");

    FeatureVector fv;
    fv.meta.kind = "magnitude";
    fv.meta.n_max = n_max;
    fv.meta.k_max = k_max;
    fv.meta.ordering = "k-major,n-ascending";
    fv.values.resize(static_cast<Eigen::Index>(n_max + 1) * k_max);
    for (int k = 1; k <= k_max; ++k) {
        for (int n = 0; n <= n_max; ++n) {
            const Eigen::ArrayXd mags = coeffs.values.row(n).cwiseAbs().transpose().array();
            const double p = 2.0 * k;
            const double sum = mags.pow(p).sum();
            fv.values[(k - 1) * (n_max + 1) + n] = std::pow(sum, 1.0 / p);
        }
    }
    return fv;
}

FeatureVector complex_parts(const std::vector<std::pair<KernelIndex, std::complex<double>>>& selected,
                            SelectionRule rule) {
    FeatureVector fv;
    fv.meta.kind = "complex_parts";
    fv.meta.rule = rule;
    fv.meta.ordering = "n-ascending,m-ascending,re-im-interleaved";
    fv.values.resize(2 * static_cast<Eigen::Index>(selected.size()));
    for (size_t i = 0; i < selected.size(); ++i) {
        fv.values[2 * i] = selected[i].second.real();
        fv.values[2 * i + 1] = selected[i].second.imag();
    }
    return fv;
}

void StandardScaler::fit(const std::vector<FeatureVector>& vectors) {
    if (vectors.size() < 2) throw std::invalid_argument("scaler fit needs at least two vectors");
    const Eigen::Index dim = vectors.front().values.size();
    for (const auto& v : vectors)
        if (v.values.size() != dim) throw std::invalid_argument("mismatched feature lengths");

    mean_ = Eigen::VectorXd::Zero(dim);
    for (const auto& v : vectors) mean_ += v.values;
    mean_ /= static_cast<double>(vectors.size());

    Eigen::VectorXd var = Eigen::VectorXd::Zero(dim);
    for (const auto& v : vectors) var += (v.values - mean_).cwiseAbs2();
    var /= static_cast<double>(vectors.size());
    sigma_ = var.cwiseSqrt().cwiseMax(1e-12);
}

FeatureVector StandardScaler::apply(const FeatureVector& v) const {
    if (!fitted()) throw std::logic_error("scaler not fitted");
    if (v.values.size() != mean_.size()) throw std::invalid_argument("mismatched feature lengths");
    FeatureVector out = v;
    out.values = (v.values - mean_).cwiseQuotient(sigma_);
    return out;
}

std::string feature_csv(const std::vector<std::string>& paths, const std::vector<std::string>& labels,
                        const std::vector<FeatureVector>& rows) {
    if (paths.size() != rows.size() || labels.size() != rows.size())
        throw std::invalid_argument("feature_csv inputs must align");
    std::string out;
    if (!rows.empty()) out += "# " + rows.front().meta.descriptor() + "\n";
    out += "path,label";
    const Eigen::Index dim = rows.empty() ? 0 : rows.front().values.size();
    for (Eigen::Index i = 0; i < dim; ++i) out += ",f_" + std::to_string(i);
    out += "\n";
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].values.size() != dim) throw std::invalid_argument("mismatched feature lengths");
        out += paths[r] + "," + labels[r];
        for (Eigen::Index i = 0; i < dim; ++i) out += "," + repr(rows[r].values[i]);
        out += "\n";
    }
    return out;
}

}  // namespace psept
