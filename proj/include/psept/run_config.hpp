#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psept/features.hpp"
#include "psept/transform.hpp"

namespace psept {

/// One experiment invocation, fully serializable so a run can be replayed
/// byte-for-byte from its echoed config. Zero grid dimensions mean
/// "derive from the input image" (n_r = N, n_theta = next even >= pi N).
struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<std::string> labels;

    int n_r = 0;
    int n_theta = 0;
    double r_max = 0.999;
    Convention convention = Convention::orthonormal;

    SelectionRule rule{SelectionKind::pyramidal, 8};
    bool include_nyquist = false;
    std::string mode = "magnitude";  // "magnitude" or "complex"
    int n_max = -1;                  // -1: use n_r - 1
    int k_max = 1;

    std::vector<double> angles_deg{0, 15, 30, 45, 60, 90};
    std::vector<double> sigmas{0.0, 0.02, 0.04, 0.06, 0.08, 0.1};
    std::vector<long> targets;  // empty: 15 log-spaced counts from 50 to 6000
    std::vector<std::string> methods{"psept", "zernike", "pzernike", "pct", "pst", "pcet"};
    std::vector<std::uint64_t> seeds{1};

    std::string out = "psept_out";
    double fill = 0.0;
    double peak = 1.0;
    int jobs = 1;
    bool save_images = false;

    int kernels_n_max = 4;
    int kernels_m_max = 4;
    int render_size = 128;

    bool operator==(const RunConfig&) const = default;
};

/// 15 logarithmically spaced coefficient budgets from 50 to 6000.
std::vector<long> default_feature_targets();

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);

}  // namespace psept
