#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "psept/transform.hpp"

namespace psept {

/// Coefficient admission predicates, all driven by one complexity knob C:
///   pyramidal          n + |m| <= C                     (separable transforms)
///   radial_with_parity n <= C, |m| <= n, (n-|m|) even   (Zernike)
///   radial             n <= C, |m| <= n                 (pseudo-Zernike)
///   pcet_weighted      2|n| + |m| <= C, n signed        (complex-exponential family)
enum class SelectionKind { pyramidal, radial_with_parity, radial, pcet_weighted };

struct SelectionRule {
    SelectionKind kind = SelectionKind::pyramidal;
    int C = 0;
    bool operator==(const SelectionRule&) const = default;
};

/// Closed-form size of the unbounded selection: (C+1)^2 for pyramidal and
/// radial, (C+1)(C+2)/2 for radial_with_parity; pcet_weighted is counted
/// by enumeration.
long selection_count(SelectionRule rule);

/// Ordered (ascending n, then ascending m) coefficients admitted by the
/// rule, clipped to the table's index ranges. The self-conjugate Nyquist
/// column m = -n_theta/2 is excluded unless `include_nyquist` is set.
/// Applying a moment-family rule (anything but pyramidal) to a separable
/// coefficient table is legal but counted as a mismatch warning.
std::vector<std::pair<KernelIndex, std::complex<double>>> select(
    const CoefficientTable& coeffs, SelectionRule rule, bool include_nyquist = false);

std::uint64_t selection_mismatch_warnings();
void reset_selection_mismatch_warnings();

struct FeatureMeta {
    std::string kind;      // "magnitude" or "complex_parts"
    SelectionRule rule{};  // meaningful for complex_parts
    int n_max = -1;        // meaningful for magnitude
    int k_max = -1;
    std::string ordering;
    std::string family = "psept";  // coefficient source tag carried into the CSV header
    bool operator==(const FeatureMeta&) const = default;

    std::string descriptor() const;
};

struct FeatureVector {
    Eigen::VectorXd values;
    FeatureMeta meta;
};

/// Rotation-invariant power means per radial mode,
///   F_n(k) = (sum_m |C_{n,m}|^{2k})^{1/(2k)},
/// with the angular sum running over every m in the table. Ordering is
/// k-major: all n for k=1, then all n for k=2, ...
FeatureVector magnitude_invariants(const CoefficientTable& coeffs, int n_max, int k_max = 1);

/// Interleaved (re, im) pairs of a selection, in selection order; length
/// is twice the selection size. Rotation-covariant, not invariant.
FeatureVector complex_parts(const std::vector<std::pair<KernelIndex, std::complex<double>>>& selected,
                            SelectionRule rule);

/// Per-dimension affine map to zero mean / unit variance over a fit set;
/// standard deviations are floored at 1e-12 so constant dimensions map
/// to zero.
class StandardScaler {
public:
    void fit(const std::vector<FeatureVector>& vectors);
    FeatureVector apply(const FeatureVector& v) const;
    bool fitted() const { return mean_.size() > 0; }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::VectorXd& sigma() const { return sigma_; }

private:
    Eigen::VectorXd mean_, sigma_;
};

/// Feature CSV: a descriptor comment, a header row, then one row per
/// image: path,label,f_0,f_1,...
std::string feature_csv(const std::vector<std::string>& paths, const std::vector<std::string>& labels,
                        const std::vector<FeatureVector>& rows);

}  // namespace psept
