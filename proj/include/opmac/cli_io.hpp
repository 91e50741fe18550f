#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opmac/config.hpp"
#include "opmac/csv.hpp"
#include "opmac/sweep.hpp"
#include "opmac/two_pair.hpp"

namespace opmac {

/// Files produced by one subcommand invocation.
struct CommandOutput {
    std::string csv_path;
    std::string json_path;
};

namespace detail {

/// Reproducibility sidecar: the exact config and seed next to every CSV.
inline void write_sidecar(const std::string& path, const RunConfig& cfg,
                          const std::string& csv_path,
                          const std::vector<std::string>& errors) {
    nlohmann::json j;
    j["config"] = emit_config(cfg);
    j["seed"] = cfg.seed;
    j["csv"] = std::filesystem::path(csv_path).filename().string();
    j["errors"] = errors;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
    out << j.dump(2) << '\n';
}

inline std::string output_stem(const RunConfig& cfg, const std::string& suffix) {
    namespace fs = std::filesystem;
    fs::path dir = cfg.out_dir.empty() ? fs::path(".") : fs::path(cfg.out_dir);
    fs::create_directories(dir);
    return (dir / (cfg.label + "_" + suffix)).string();
}

} // namespace detail

/// `simulate`: the configured schemes at the configured single parameter
/// point (a degenerate one-point sweep, same CSV schema).
inline CommandOutput run_simulate_command(const RunConfig& cfg, unsigned threads = 0) {
    validate_config(cfg);
    const std::vector<double> grid = {cfg.lambda};
    const auto schemes = cfg.scheme_configs();
    const auto rows = simulation_sweep(cfg.system_params(), schemes, grid, cfg.sim_options(),
                                       cfg.window, cfg.replications, cfg.seed, threads);
    const std::string stem = detail::output_stem(cfg, "simulate");
    CommandOutput out{stem + ".csv", stem + ".json"};
    write_simulation_csv(out.csv_path, "lambda", rows);
    std::vector<std::string> errors;
    for (const auto& r : rows)
        if (!r.error.empty()) errors.push_back(r.scheme + ": " + r.error);
    detail::write_sidecar(out.json_path, cfg, out.csv_path, errors);
    return out;
}

/// `sweep`: dispatches on sweep_kind; grid and axis come from the config.
inline CommandOutput run_sweep_command(const RunConfig& cfg, unsigned threads = 0) {
    validate_config(cfg);
    if (cfg.sweep_values.empty())
        throw std::invalid_argument("config key 'sweep_values' must be a non-empty grid");
    const std::string stem = detail::output_stem(cfg, "sweep");
    CommandOutput out{stem + ".csv", stem + ".json"};
    std::vector<std::string> errors;

    if (cfg.sweep_kind == "simulation") {
        if (cfg.sweep_axis_enum() != SweepAxis::Lambda)
            throw std::invalid_argument("simulation sweeps support sweep_axis 'lambda' only");
        const auto schemes = cfg.scheme_configs();
        const auto rows =
            simulation_sweep(cfg.system_params(), schemes, cfg.sweep_values, cfg.sim_options(),
                             cfg.window, cfg.replications, cfg.seed, threads);
        write_simulation_csv(out.csv_path, "lambda", rows);
        for (const auto& r : rows)
            if (!r.error.empty())
                errors.push_back(r.scheme + " @ " + format_g10(r.axis) + ": " + r.error);
    } else if (cfg.sweep_kind == "optimizer") {
        const auto rows = optimizer_sweep(cfg.system_params(), cfg.sweep_axis_enum(),
                                          cfg.sweep_values, cfg.interference);
        write_optimizer_csv(out.csv_path, cfg.sweep_axis, rows);
        for (const auto& r : rows)
            if (!r.error.empty()) errors.push_back(format_g10(r.axis) + ": " + r.error);
    } else { // op_curve
        const auto rows = op_curve(cfg.system_params(), cfg.sweep_values);
        write_op_curve_csv(out.csv_path, rows);
        for (const auto& r : rows)
            if (!r.error.empty()) errors.push_back(format_g10(r.axis) + ": " + r.error);
    }

    detail::write_sidecar(out.json_path, cfg, out.csv_path, errors);
    return out;
}

/// `demo`: the two-pair mode comparison table.
inline CommandOutput run_demo_command(const RunConfig& cfg, const TwoPairGains& gains,
                                      double external_I, double op1, double op2) {
    const auto table = two_pair_demo(gains, external_I, op1, op2);
    const std::string stem = detail::output_stem(cfg, "demo");
    CommandOutput out{stem + ".csv", stem + ".json"};
    write_demo_csv(out.csv_path, table);
    detail::write_sidecar(out.json_path, cfg, out.csv_path, {});
    return out;
}

} // namespace opmac
