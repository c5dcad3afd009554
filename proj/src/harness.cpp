#include "psept/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <random>
#include <thread>

#include "psept/baselines.hpp"
#include "psept/image_io.hpp"

namespace psept::harness {

namespace fs = std::filesystem;
using Cplx = std::complex<double>;

namespace {

std::string repr(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Indexed parallel map with deterministic collection order.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

struct RunDir {
    fs::path dir;
    std::ofstream timings;

    explicit RunDir(const RunConfig& cfg) : dir(cfg.out) {
        fs::create_directories(dir);
        std::ofstream(dir / "config.json", std::ios::binary) << config_to_json(cfg);
        timings.open(dir / "timings.log", std::ios::binary);
    }
    void time_row(const std::string& key, double ms) {
        timings << key << " " << repr(ms) << "\n";
    }
    void write_results(const std::string& csv) {
        std::ofstream(dir / "results.csv", std::ios::binary) << csv;
    }
};

PolarGrid grid_for(const RunConfig& cfg, const GrayImage& img) {
    if (cfg.n_r > 0 && cfg.n_theta > 0) return build_grid(cfg.n_r, cfg.n_theta, cfg.r_max);
    return default_grid_for(img.width(), img.height(), cfg.r_max);
}

std::vector<GrayImage> load_inputs(const RunConfig& cfg) {
    if (cfg.inputs.empty()) throw std::invalid_argument("no input images configured");
    std::vector<GrayImage> imgs;
    imgs.reserve(cfg.inputs.size());
    for (const auto& p : cfg.inputs) imgs.push_back(load_image(p));
    return imgs;
}

std::string label_for(const RunConfig& cfg, size_t i) {
    return i < cfg.labels.size() ? cfg.labels[i] : std::string{};
}

// Zeroes every table entry outside the pyramid n + |m| <= C.
CoefficientTable mask_pyramidal(const CoefficientTable& t, int C) {
    CoefficientTable out = t;
    for (int n = 0; n < t.grid.n_r; ++n)
        for (int mi = 0; mi < t.grid.n_theta; ++mi)
            if (n + std::abs(t.m_of(mi)) > C) out.values(n, mi) = 0.0;
    return out;
}

std::optional<MomentFamily> family_of(const std::string& method) {
    if (method == "zernike") return MomentFamily::zernike;
    if (method == "pzernike") return MomentFamily::pseudo_zernike;
    if (method == "pct") return MomentFamily::pct;
    if (method == "pst") return MomentFamily::pst;
    if (method == "pcet") return MomentFamily::pcet;
    return std::nullopt;
}

Eigen::VectorXd moment_magnitudes(const std::vector<std::pair<KernelIndex, Cplx>>& moments) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(moments.size()));
    for (size_t i = 0; i < moments.size(); ++i) v[static_cast<Eigen::Index>(i)] = std::abs(moments[i].second);
    return v;
}

FeatureVector psept_complex_features(const GrayImage& img, const RunConfig& cfg) {
    const PolarGrid grid = grid_for(cfg, img);
    const CoefficientTable coeffs = forward(cart_to_polar(img, grid), cfg.convention);
    return complex_parts(select(coeffs, cfg.rule, cfg.include_nyquist), cfg.rule);
}

Eigen::VectorXd method_magnitude_features(const std::string& method, const GrayImage& img,
                                          const RunConfig& cfg) {
    if (method == "psept") {
        const PolarGrid grid = grid_for(cfg, img);
        const CoefficientTable coeffs = forward(cart_to_polar(img, grid), cfg.convention);
        const int n_max = cfg.n_max >= 0 ? std::min(cfg.n_max, grid.n_r - 1) : grid.n_r - 1;
        return magnitude_invariants(coeffs, n_max, cfg.k_max).values;
    }
    const auto fam = family_of(method);
    if (!fam) throw std::invalid_argument("unknown method '" + method + "'");
    return moment_magnitudes(compute_moments(img, *fam, cfg.rule.C));
}

}  // namespace

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.status != "fail"; });
}

std::string ValidationReport::json() const {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e;
        e["name"] = c.name;
        e["status"] = c.status;
        e["measured"] = std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json(repr(c.measured));
        e["threshold"] = c.threshold;
        if (!c.note.empty()) e["note"] = c.note;
        j["checks"].push_back(e);
    }
    j["all_passed"] = all_passed();
    return j.dump(2);
}

ValidationReport run_validate(const RunConfig& cfg) {
    const int n_r = cfg.n_r > 0 ? cfg.n_r : 8;
    const int n_theta = cfg.n_theta > 0 ? cfg.n_theta : 16;
    const PolarGrid grid = build_grid(n_r, n_theta, cfg.r_max);  // rejects odd n_theta up front
    if (static_cast<long>(n_r) * n_theta > 4096)
        throw std::invalid_argument("validation scale is limited to n_r * n_theta <= 4096");

    ValidationReport report;
    const Eigen::MatrixXcd mat = build_kernel_matrix(grid, full_order_set(grid));

    {
        Check c{"orthogonality", "pass", 0.0, 1e-12, "max |gram - identity|, rows M M^H"};
        c.measured = orthogonality_error(mat * mat.adjoint());
        if (c.measured > c.threshold) c.status = "fail";
        report.checks.push_back(c);
    }
    {
        Check c{"completeness", "pass", 0.0, 1e-12, "max |gram - identity|, columns M^H M"};
        c.measured = orthogonality_error(mat.adjoint() * mat);
        if (c.measured > c.threshold) c.status = "fail";
        report.checks.push_back(c);
    }
    if (static_cast<long>(n_r) * n_theta <= 1024) {
        Check c{"conditioning", "pass", 0.0, 1e-10, "|cond - 1| of the full kernel matrix"};
        c.measured = std::abs(condition_number(mat) - 1.0);
        if (c.measured > c.threshold) c.status = "fail";
        report.checks.push_back(c);
    }

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    if (cfg.convention == Convention::orthonormal) {
        Check rt{"round_trip", "pass", 0.0, 1e-12, "max |inverse(forward(g)) - g| over 20 random images"};
        Check pv{"parseval", "pass", 0.0, 1e-10, "max relative energy mismatch over the same images"};
        for (int trial = 0; trial < 20; ++trial) {
            PolarImage g;
            g.grid = grid;
            g.samples.resize(n_theta, n_r);
            for (int j = 0; j < n_theta; ++j)
                for (int k = 0; k < n_r; ++k) g.samples(j, k) = uni(rng);
            const CoefficientTable coeffs = forward(g);
            const ComplexPolarImage back = inverse(coeffs);
            const double err = (back.samples - g.samples.cast<Cplx>()).abs().maxCoeff();
            rt.measured = std::max(rt.measured, err);
            const double es = energy_spatial(g), ec = energy_spectral(coeffs);
            pv.measured = std::max(pv.measured, std::abs(es - ec) / es);
        }
        if (rt.measured > rt.threshold) rt.status = "fail";
        if (pv.measured > pv.threshold) pv.status = "fail";
        report.checks.push_back(rt);
        report.checks.push_back(pv);
    } else {
        report.checks.push_back({"round_trip", "skipped", 0.0, 0.0, "no inverse under the literal convention"});
        report.checks.push_back({"parseval", "skipped", 0.0, 0.0, "energy identity holds for the orthonormal convention only"});
    }

    if (!cfg.out.empty()) {
        RunDir run(cfg);
        std::ofstream(run.dir / "report.json", std::ios::binary) << report.json();
    }
    return report;
}

std::vector<std::string> run_transform(const RunConfig& cfg) {
    RunDir run(cfg);
    const auto imgs = load_inputs(cfg);
    std::vector<std::string> written;
    for (size_t i = 0; i < imgs.size(); ++i) {
        const double t0 = now_ms();
        const PolarGrid grid = grid_for(cfg, imgs[i]);
        const CoefficientTable coeffs = forward(cart_to_polar(imgs[i], grid), cfg.convention);
        const std::string stem = fs::path(cfg.inputs[i]).stem().string();
        const fs::path bin = run.dir / (stem + ".psept");
        const fs::path csv = run.dir / (stem + "_coeffs.csv");
        save_coefficients(coeffs, bin);
        write_coefficients_csv(coeffs, csv);
        run.time_row("transform " + cfg.inputs[i], now_ms() - t0);
        written.push_back(bin.string());
        written.push_back(csv.string());
    }
    return written;
}

std::string run_reconstruct(const RunConfig& cfg) {
    RunDir run(cfg);
    const auto imgs = load_inputs(cfg);
    std::string csv = "input,C,n_kept,rmse,psnr_db,max_abs,n_pixels\n";
    for (size_t i = 0; i < imgs.size(); ++i) {
        const double t0 = now_ms();
        const PolarGrid grid = grid_for(cfg, imgs[i]);
        CoefficientTable coeffs = forward(cart_to_polar(imgs[i], grid), cfg.convention);
        long kept = static_cast<long>(grid.n_r) * grid.n_theta;
        if (cfg.rule.C >= 0) {
            coeffs = mask_pyramidal(coeffs, cfg.rule.C);
            kept = 0;
            for (int n = 0; n < grid.n_r; ++n)
                for (int mi = 0; mi < grid.n_theta; ++mi)
                    if (coeffs.values(n, mi) != Cplx{0.0, 0.0}) ++kept;
        }
        const ComplexPolarImage rec = inverse(coeffs);
        PolarImage rec_real;
        rec_real.grid = grid;
        rec_real.samples = rec.samples.real();
        const GrayImage out = polar_to_cart(rec_real, imgs[i].width(), imgs[i].height(), cfg.fill);
        const QualityReport q = quality_report(imgs[i], out, cfg.peak, Mask::disk);

        const std::string stem = fs::path(cfg.inputs[i]).stem().string();
        save_pgm(out, run.dir / (stem + "_recon.pgm"), 65535);
        csv += cfg.inputs[i] + "," + std::to_string(cfg.rule.C) + "," + std::to_string(kept) + "," +
               q.csv_row() + "\n";
        run.time_row("reconstruct " + cfg.inputs[i], now_ms() - t0);
    }
    run.write_results(csv);
    return csv;
}

std::string run_kernels(const RunConfig& cfg) {
    RunDir run(cfg);
    const int n_r = cfg.n_r > 0 ? cfg.n_r : 32;
    const int n_theta = cfg.n_theta > 0 ? cfg.n_theta : 64;
    const PolarGrid grid = build_grid(n_r, n_theta, cfg.r_max);
    if (cfg.kernels_n_max >= n_r || cfg.kernels_m_max > n_theta / 2 - 1)
        throw std::invalid_argument("kernel gallery orders exceed the grid");

    nlohmann::json index = nlohmann::json::array();
    for (int n = 0; n <= cfg.kernels_n_max; ++n) {
        for (int m = -cfg.kernels_m_max; m <= cfg.kernels_m_max; ++m) {
            ComplexPolarImage kimg;
            kimg.grid = grid;
            kimg.samples.resize(n_theta, n_r);
            for (int j = 0; j < n_theta; ++j)
                for (int k = 0; k < n_r; ++k) kimg.samples(j, k) = kernel({n, m}, k, j, grid);
            for (const char* part : {"re", "im"}) {
                PolarImage plane;
                plane.grid = grid;
                if (std::string(part) == "re")
                    plane.samples = kimg.samples.real();
                else
                    plane.samples = kimg.samples.imag();
                const GrayImage rendered = polar_to_cart(plane, cfg.render_size, cfg.render_size, 0.0);
                double lo = rendered.pixels.minCoeff(), hi = rendered.pixels.maxCoeff();
                if (hi <= lo) hi = lo + 1.0;  // constant plane: map to the low end
                GrayImage quantizable = rendered;
                quantizable.range = {lo, hi};
                const std::string name =
                    "K_" + std::to_string(n) + "_" + std::to_string(m) + "_" + part + ".pgm";
                save_pgm(quantizable, run.dir / name, 65535);
                index.push_back({{"file", name}, {"n", n}, {"m", m}, {"part", part}, {"lo", lo}, {"hi", hi}});
            }
        }
    }
    const std::string text = index.dump(2);
    std::ofstream(run.dir / "index.json", std::ios::binary) << text;
    return text;
}

std::string run_features(const RunConfig& cfg) {
    RunDir run(cfg);
    const auto imgs = load_inputs(cfg);
    std::vector<FeatureVector> rows(imgs.size());
    std::vector<std::string> labels(imgs.size());
    parallel_for(static_cast<int>(imgs.size()), cfg.jobs, [&](int i) {
        if (cfg.mode == "complex") {
            rows[i] = psept_complex_features(imgs[i], cfg);
        } else {
            const PolarGrid grid = grid_for(cfg, imgs[i]);
            const CoefficientTable coeffs = forward(cart_to_polar(imgs[i], grid), cfg.convention);
            const int n_max = cfg.n_max >= 0 ? std::min(cfg.n_max, grid.n_r - 1) : grid.n_r - 1;
            rows[i] = magnitude_invariants(coeffs, n_max, cfg.k_max);
        }
        labels[i] = label_for(cfg, i);
    });
    const std::string csv = feature_csv(cfg.inputs, labels, rows);
    std::ofstream(run.dir / "features.csv", std::ios::binary) << csv;
    run.write_results(csv);
    return csv;
}

std::optional<int> largest_c_within(const std::string& method, long target) {
    const auto count_at = [&](int C) -> long {
        if (method == "psept") return selection_count({SelectionKind::pyramidal, C});
        const auto fam = family_of(method);
        if (!fam) throw std::invalid_argument("unknown method '" + method + "'");
        return family_count(*fam, C);
    };
    if (count_at(0) > target) return std::nullopt;
    int c = 0;
    while (count_at(c + 1) <= target) ++c;
    return c;
}

std::string run_bench_reconstruction(const RunConfig& cfg) {
    RunDir run(cfg);
    const auto imgs = load_inputs(cfg);
    const std::vector<long> targets = cfg.targets.empty() ? default_feature_targets() : cfg.targets;

    std::string csv = "method,input,target,C,n_features,rmse,psnr_db,status\n";
    for (const auto& method : cfg.methods) {
        for (size_t i = 0; i < imgs.size(); ++i) {
            const GrayImage& img = imgs[i];

            // The separable path computes the spectrum once per image.
            std::optional<CoefficientTable> spectrum;
            PolarGrid grid;
            if (method == "psept") {
                grid = grid_for(cfg, img);
                spectrum = forward(cart_to_polar(img, grid), Convention::orthonormal);
            }

            for (const long target : targets) {
                const double t0 = now_ms();
                const auto c_opt = largest_c_within(method, target);
                std::string status = "ok";
                double err = 0.0, quality = 0.0;
                long n_features = 0;
                int c_used = -1;
                if (!c_opt) {
                    status = "unreachable";
                    err = std::nan("");
                    quality = std::nan("");
                } else {
                    c_used = *c_opt;
                    try {
                        GrayImage rec;
                        if (method == "psept") {
                            const CoefficientTable masked = mask_pyramidal(*spectrum, c_used);
                            n_features = 0;  // admitted entries actually present in the grid
                            for (int n = 0; n < grid.n_r; ++n)
                                for (int mi = 0; mi < grid.n_theta; ++mi)
                                    if (n + std::abs(masked.m_of(mi)) <= c_used) ++n_features;
                            const ComplexPolarImage inv = inverse(masked);
                            PolarImage inv_real;
                            inv_real.grid = grid;
                            inv_real.samples = inv.samples.real();
                            rec = polar_to_cart(inv_real, img.width(), img.height(), cfg.fill);
                        } else {
                            const auto fam = *family_of(method);
                            const auto moments = compute_moments(img, fam, c_used);
                            n_features = static_cast<long>(moments.size());
                            rec = reconstruct_from_moments(moments, fam, std::min(img.width(), img.height()));
                        }
                        err = rmse(img, rec, Mask::disk);
                        quality = psnr(img, rec, cfg.peak, Mask::disk);
                        if (cfg.save_images) {
                            fs::create_directories(run.dir / "images");
                            GrayImage clamped = rec;
                            clamped.pixels = rec.pixels.max(0.0).min(1.0);
                            save_pgm(clamped, run.dir / "images" /
                                     (method + "_" + fs::path(cfg.inputs[i]).stem().string() + "_t" +
                                      std::to_string(target) + ".pgm"), 65535);
                        }
                    } catch (const PrecisionLossError&) {
                        status = "overflow";
                        err = std::nan("");
                        quality = std::nan("");
                    }
                }
                csv += method + "," + cfg.inputs[i] + "," + std::to_string(target) + "," +
                       std::to_string(c_used) + "," + std::to_string(n_features) + "," + repr(err) +
                       "," + repr(quality) + "," + status + "\n";
                run.time_row("bench-reconstruction " + method + " " + cfg.inputs[i] + " t" +
                                 std::to_string(target),
                             now_ms() - t0);
            }
        }
    }
    run.write_results(csv);
    return csv;
}

std::string run_bench_rotation(const RunConfig& cfg) {
    RunDir run(cfg);
    const auto imgs = load_inputs(cfg);

    std::string csv = "method,angle_deg,mean_feature_distance,max_feature_distance\n";
    for (const auto& method : cfg.methods) {
        const double t0 = now_ms();
        std::vector<Eigen::VectorXd> reference(imgs.size());
        for (size_t i = 0; i < imgs.size(); ++i)
            reference[i] = method_magnitude_features(method, imgs[i], cfg);

        std::vector<std::pair<double, double>> rows(cfg.angles_deg.size());
        parallel_for(static_cast<int>(cfg.angles_deg.size()), cfg.jobs, [&](int a) {
            const double angle = cfg.angles_deg[a];
            double sum = 0.0, mx = 0.0;
            for (size_t i = 0; i < imgs.size(); ++i) {
                const GrayImage rot = angle == 0.0 ? imgs[i] : rotate_image(imgs[i], angle, cfg.fill);
                const Eigen::VectorXd feat = method_magnitude_features(method, rot, cfg);
                const double d = euclidean_distance(reference[i], feat, true);
                sum += d;
                mx = std::max(mx, d);
            }
            rows[a] = {sum / static_cast<double>(imgs.size()), mx};
        });
        for (size_t a = 0; a < rows.size(); ++a) {
            csv += method + "," + repr(cfg.angles_deg[a]) + "," + repr(rows[a].first) + "," +
                   repr(rows[a].second) + "\n";
        }
        run.time_row("bench-rotation " + method, now_ms() - t0);
    }
    run.write_results(csv);
    return csv;
}

std::string run_bench_noise(const RunConfig& cfg) {
    RunDir run(cfg);
    const auto imgs = load_inputs(cfg);
    fs::create_directories(run.dir / "features");

    std::string csv = "method,sigma,seed,features_path\n";
    for (const auto& method : cfg.methods) {
        for (const double sigma : cfg.sigmas) {
            for (const auto seed : cfg.seeds) {
                const double t0 = now_ms();
                std::vector<FeatureVector> rows(imgs.size());
                std::vector<std::string> labels(imgs.size());
                parallel_for(static_cast<int>(imgs.size()), cfg.jobs, [&](int i) {
                    const GrayImage noisy = add_gaussian_noise(imgs[i], sigma, seed + 7919 * i);
                    if (method == "psept") {
                        rows[i] = psept_complex_features(noisy, cfg);
                    } else {
                        const auto fam = *family_of(method);
                        const auto moments = compute_moments(noisy, fam, cfg.rule.C);
                        rows[i] = complex_parts(moments, family_rule(fam, cfg.rule.C));
                        rows[i].meta.family = method;
                    }
                    labels[i] = label_for(cfg, i);
                });
                std::string sig = repr(sigma);
                std::replace(sig.begin(), sig.end(), '.', 'p');
                const std::string name =
                    method + "_sigma" + sig + "_seed" + std::to_string(seed) + ".csv";
                std::ofstream(run.dir / "features" / name, std::ios::binary)
                    << feature_csv(cfg.inputs, labels, rows);
                csv += method + "," + repr(sigma) + "," + std::to_string(seed) + ",features/" + name + "\n";
                run.time_row("bench-noise " + method + " sigma" + repr(sigma) + " seed" +
                                 std::to_string(seed),
                             now_ms() - t0);
            }
        }
    }
    run.write_results(csv);
    return csv;
}

std::string run_compare(const RunConfig& cfg) {
    RunDir run(cfg);
    std::string csv = "method,C,n_selected,n_complex_features\n";
    for (const auto& method : cfg.methods) {
        for (int c = 0; c <= cfg.rule.C; ++c) {
            long count = 0;
            if (method == "psept") {
                count = selection_count({SelectionKind::pyramidal, c});
            } else {
                count = static_cast<long>(family_indices(*family_of(method), c).size());
            }
            csv += method + "," + std::to_string(c) + "," + std::to_string(count) + "," +
                   std::to_string(2 * count) + "\n";
        }
    }
    run.write_results(csv);
    return csv;
}

}  // namespace psept::harness
