// Command-line front end: parses flags into a RunConfig (an optional JSON
// config file supplies defaults, flags override) and dispatches to the
// experiment harness. Every run echoes its effective config into the
// output directory so it can be replayed exactly.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "psept/harness.hpp"

namespace {

using psept::Convention;
using psept::RunConfig;
using psept::SelectionKind;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Adds the flags shared by every subcommand. Values are written straight
// into the config; CLI11 only touches members whose flags were given, so
// config-file values survive unless overridden.
void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& convention, std::string& rule,
                      std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);
    cmd->add_option("--nr", cfg.n_r, "radial sample count (0 = derive from image)");
    cmd->add_option("--ntheta", cfg.n_theta, "angular sample count, even (0 = derive from image)");
    cmd->add_option("--rmax", cfg.r_max, "outermost ring radius in (0,1]");
    cmd->add_option("--convention", convention, "orthonormal | paper-literal");
    cmd->add_option("--rule", rule, "pyramidal | zm | pzm | pcet");
    cmd->add_option("--C", cfg.rule.C, "selection complexity parameter");
    cmd->add_option("--seeds", cfg.seeds, "seed list")->delimiter(',')->allow_extra_args(false);
    cmd->add_option("--out", cfg.out, "output directory");
    cmd->add_option("--jobs", cfg.jobs, "worker pool size");
    cmd->add_flag("--include-nyquist", cfg.include_nyquist, "keep the self-conjugate angular mode in selections");
}

void apply_enum_strings(RunConfig& cfg, const std::string& convention, const std::string& rule) {
    if (!convention.empty()) {
        if (convention == "orthonormal") cfg.convention = Convention::orthonormal;
        else if (convention == "paper-literal") cfg.convention = Convention::paper_literal;
        else throw CLI::ValidationError("--convention", "must be orthonormal or paper-literal");
    }
    if (!rule.empty()) {
        if (rule == "pyramidal") cfg.rule.kind = SelectionKind::pyramidal;
        else if (rule == "zm") cfg.rule.kind = SelectionKind::radial_with_parity;
        else if (rule == "pzm") cfg.rule.kind = SelectionKind::radial;
        else if (rule == "pcet") cfg.rule.kind = SelectionKind::pcet_weighted;
        else throw CLI::ValidationError("--rule", "must be pyramidal, zm, pzm or pcet");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separable polar transform toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);

    RunConfig cfg;
    std::string convention, rule;

    // Parse --config first so flag handlers overwrite file-provided values.
    app.preparse_callback([&](size_t) {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc)
                cfg = psept::config_from_json(read_file(argv[i + 1]));
            else if (arg.rfind("--config=", 0) == 0)
                cfg = psept::config_from_json(read_file(arg.substr(9)));
        }
    });

    auto* validate = app.add_subcommand("validate", "orthogonality / round-trip / energy suites");
    auto* transform = app.add_subcommand("transform", "image -> coefficient container + CSV");
    auto* reconstruct = app.add_subcommand("reconstruct", "transform, truncate, invert, render");
    auto* kernels = app.add_subcommand("kernels", "render the kernel gallery");
    auto* features = app.add_subcommand("features", "feature CSV for a set of images");
    auto* bench_rec = app.add_subcommand("bench-reconstruction", "error sweep over feature budgets");
    auto* bench_rot = app.add_subcommand("bench-rotation", "feature distance under rotation");
    auto* bench_noise = app.add_subcommand("bench-noise", "feature files under Gaussian noise");
    auto* compare = app.add_subcommand("compare", "selection counts per method and C");

    for (CLI::App* cmd : {validate, transform, reconstruct, kernels, features, bench_rec, bench_rot,
                          bench_noise, compare})
        add_common_flags(cmd, cfg, convention, rule, config_path);

    for (CLI::App* cmd : {transform, reconstruct, features, bench_rec, bench_rot, bench_noise}) {
        cmd->add_option("inputs", cfg.inputs, "input images (PGM or PNG)");
        cmd->add_option("--labels", cfg.labels, "labels aligned with inputs")->delimiter(',')->allow_extra_args(false);
        cmd->add_option("--fill", cfg.fill, "value for pixels outside the disk");
        cmd->add_option("--peak", cfg.peak, "PSNR peak value");
    }
    for (CLI::App* cmd : {features, bench_rot}) {
        cmd->add_option("--mode", cfg.mode, "magnitude | complex");
        cmd->add_option("--n-max", cfg.n_max, "largest radial mode for magnitude features (-1 = all)");
        cmd->add_option("--k-max", cfg.k_max, "largest power-mean order for magnitude features");
    }
    bench_rot->add_option("--angles", cfg.angles_deg, "rotation angles in degrees")->delimiter(',')->allow_extra_args(false);
    bench_noise->add_option("--sigmas", cfg.sigmas, "noise standard deviations")->delimiter(',')->allow_extra_args(false);
    bench_rec->add_option("--targets", cfg.targets, "feature-count budgets")->delimiter(',')->allow_extra_args(false);
    bench_rec->add_flag("--save-images", cfg.save_images, "write reconstructions as PGM");
    for (CLI::App* cmd : {bench_rec, bench_rot, bench_noise})
        cmd->add_option("--methods", cfg.methods, "subset of psept,zernike,pzernike,pct,pst,pcet")
            ->delimiter(',')->allow_extra_args(false);
    kernels->add_option("--n-max", cfg.kernels_n_max, "largest radial order to render");
    kernels->add_option("--m-max", cfg.kernels_m_max, "largest |angular order| to render");
    kernels->add_option("--size", cfg.render_size, "rendered image side length");

    CLI11_PARSE(app, argc, argv);

    try {
        apply_enum_strings(cfg, convention, rule);
        if (validate->parsed()) {
            cfg.command = "validate";
            const auto report = psept::harness::run_validate(cfg);
            std::cout << report.json() << "\n";
            return report.all_passed() ? 0 : 1;
        }
        if (transform->parsed()) {
            cfg.command = "transform";
            for (const auto& p : psept::harness::run_transform(cfg)) std::cout << p << "\n";
            return 0;
        }
        if (reconstruct->parsed()) {
            cfg.command = "reconstruct";
            std::cout << psept::harness::run_reconstruct(cfg);
            return 0;
        }
        if (kernels->parsed()) {
            cfg.command = "kernels";
            psept::harness::run_kernels(cfg);
            std::cout << "kernel gallery written to " << cfg.out << "\n";
            return 0;
        }
        if (features->parsed()) {
            cfg.command = "features";
            std::cout << psept::harness::run_features(cfg);
            return 0;
        }
        if (bench_rec->parsed()) {
            cfg.command = "bench-reconstruction";
            std::cout << psept::harness::run_bench_reconstruction(cfg);
            return 0;
        }
        if (bench_rot->parsed()) {
            cfg.command = "bench-rotation";
            std::cout << psept::harness::run_bench_rotation(cfg);
            return 0;
        }
        if (bench_noise->parsed()) {
            cfg.command = "bench-noise";
            std::cout << psept::harness::run_bench_noise(cfg);
            return 0;
        }
        if (compare->parsed()) {
            cfg.command = "compare";
            std::cout << psept::harness::run_compare(cfg);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
