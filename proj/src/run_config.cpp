#include "psept/run_config.hpp"

#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace psept {

namespace {
using nlohmann::json;

const char* kind_str(SelectionKind k) {
    switch (k) {
        case SelectionKind::pyramidal: return "pyramidal";
        case SelectionKind::radial_with_parity: return "zm";
        case SelectionKind::radial: return "pzm";
        case SelectionKind::pcet_weighted: return "pcet";
    }
    return "pyramidal";
}

SelectionKind kind_from(const std::string& s) {
    if (s == "pyramidal") return SelectionKind::pyramidal;
    if (s == "zm") return SelectionKind::radial_with_parity;
    if (s == "pzm") return SelectionKind::radial;
    if (s == "pcet") return SelectionKind::pcet_weighted;
    throw std::invalid_argument("unknown selection rule '" + s + "'");
}
}  // namespace

std::vector<long> default_feature_targets() {
    std::vector<long> t;
    const double lo = std::log(50.0), hi = std::log(6000.0);
    for (int i = 0; i < 15; ++i) t.push_back(std::lround(std::exp(lo + (hi - lo) * i / 14.0)));
    return t;
}

std::string config_to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["inputs"] = c.inputs;
    j["labels"] = c.labels;
    j["nr"] = c.n_r;
    j["ntheta"] = c.n_theta;
    j["rmax"] = c.r_max;
    j["convention"] = c.convention == Convention::orthonormal ? "orthonormal" : "paper-literal";
    j["rule"] = kind_str(c.rule.kind);
    j["C"] = c.rule.C;
    j["include_nyquist"] = c.include_nyquist;
    j["mode"] = c.mode;
    j["n_max"] = c.n_max;
    j["k_max"] = c.k_max;
    j["angles_deg"] = c.angles_deg;
    j["sigmas"] = c.sigmas;
    j["targets"] = c.targets;
    j["methods"] = c.methods;
    j["seeds"] = c.seeds;
    j["out"] = c.out;
    j["fill"] = c.fill;
    j["peak"] = c.peak;
    j["jobs"] = c.jobs;
    j["save_images"] = c.save_images;
    j["kernels_n_max"] = c.kernels_n_max;
    j["kernels_m_max"] = c.kernels_m_max;
    j["render_size"] = c.render_size;
    return j.dump(2);
}

RunConfig config_from_json(const std::string& text) {
    json j = json::parse(text);
    RunConfig c;
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("command", c.command);
    get("inputs", c.inputs);
    get("labels", c.labels);
    get("nr", c.n_r);
    get("ntheta", c.n_theta);
    get("rmax", c.r_max);
    if (j.contains("convention")) {
        const std::string s = j.at("convention").get<std::string>();
        if (s == "orthonormal") c.convention = Convention::orthonormal;
        else if (s == "paper-literal") c.convention = Convention::paper_literal;
        else throw std::invalid_argument("unknown convention '" + s + "'");
    }
    if (j.contains("rule")) c.rule.kind = kind_from(j.at("rule").get<std::string>());
    if (j.contains("C")) c.rule.C = j.at("C").get<int>();
    get("include_nyquist", c.include_nyquist);
    get("mode", c.mode);
    get("n_max", c.n_max);
    get("k_max", c.k_max);
    get("angles_deg", c.angles_deg);
    get("sigmas", c.sigmas);
    get("targets", c.targets);
    get("methods", c.methods);
    get("seeds", c.seeds);
    get("out", c.out);
    get("fill", c.fill);
    get("peak", c.peak);
    get("jobs", c.jobs);
    get("save_images", c.save_images);
    get("kernels_n_max", c.kernels_n_max);
    get("kernels_m_max", c.kernels_m_max);
    get("render_size", c.render_size);
    return c;
}

}  // namespace psept
