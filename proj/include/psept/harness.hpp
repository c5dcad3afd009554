#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psept/metrics.hpp"
#include "psept/run_config.hpp"

namespace psept::harness {

/// Result of one validation property.
struct Check {
    std::string name;
    std::string status;  // "pass", "fail", "skipped"
    double measured = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool all_passed() const;
    std::string json() const;
};

/// Every runner writes into cfg.out: the effective config echo
/// (config.json), the deterministic result table (results.csv), and a
/// timings.log sidecar holding the wall-clock columns, so re-runs with
/// equal config and seeds produce byte-identical CSV bodies. The CSV body
/// is also returned for in-process comparison.

/// Orthogonality / round-trip / Parseval suites at validation scale
/// (n_r * n_theta <= 4096). Writes report.json.
ValidationReport run_validate(const RunConfig& cfg);

/// Image -> coefficient container (.psept) plus a CSV view per input.
std::vector<std::string> run_transform(const RunConfig& cfg);

/// Forward, pyramidal zeroing at rule.C (full spectrum when C < 0),
/// inverse, render; writes recon PGMs and a quality report per input.
std::string run_reconstruct(const RunConfig& cfg);

/// Kernel gallery: K_{n}_{m}_{re|im}.pgm via the polar renderer plus an
/// index.json mapping filenames to indices and quantization intervals.
std::string run_kernels(const RunConfig& cfg);

/// Feature CSV for the configured inputs (magnitude or complex mode).
std::string run_features(const RunConfig& cfg);

/// Reconstruction error sweep over feature budgets for every configured
/// method; baseline order overflow is recorded as status=overflow rows.
std::string run_bench_reconstruction(const RunConfig& cfg);

/// Unit-normalized magnitude-feature distance between each input and its
/// rotated versions, per method and angle.
std::string run_bench_rotation(const RunConfig& cfg);

/// Complex-part feature files under Gaussian noise, per method, sigma and
/// seed; the results table records which file belongs to which cell.
std::string run_bench_noise(const RunConfig& cfg);

/// Selection-count table per method and C so feature budgets can be
/// matched across families.
std::string run_compare(const RunConfig& cfg);

/// Largest C whose admitted-index count stays within `target` for the
/// given method ("psept" uses the pyramidal rule), or nullopt when even
/// C = 0 exceeds it.
std::optional<int> largest_c_within(const std::string& method, long target);

}  // namespace psept::harness
