// Command-line front end: solver/approximation/opportunity queries, the
// Monte Carlo scheme comparison, parameter sweeps, and the two-pair demo.
// Machine-readable CSV plus a JSON sidecar carrying the exact config and seed.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opmac/opmac.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::string label;
    std::string duplex;
    std::string schemes_csv;
    std::string random_tx_rule;
    std::string solver_variant;
    double lambda = 0, alpha = 0, theta_db = 0, d = 0, beta_db = 0;
    double window = 0, interference = 0, fixed_p = 0;
    long slots = 0, warmup = 0;
    int replications = 0;
    unsigned long long seed = 0;
    unsigned threads = 0;
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file (flat keys)");
    cmd->add_option("--preset", o.preset, "bundled preset: fig2, fig3, fig4a, fig4b");
    cmd->add_option("--out", o.out_dir, "output directory (default $OPMAC_OUT_DIR or .)");
    cmd->add_option("--label", o.label, "output file stem");
    cmd->add_option("--lambda", o.lambda, "node density per unit area (per process half)");
    cmd->add_option("--alpha", o.alpha, "path-loss exponent (> 2)");
    cmd->add_option("--theta-db", o.theta_db, "SIR threshold in dB");
    cmd->add_option("--d", o.d, "pair distance");
    cmd->add_option("--beta-db", o.beta_db, "residual self-interference in dB");
    cmd->add_option("--duplex", o.duplex, "half | full");
    cmd->add_option("--schemes", o.schemes_csv, "comma-separated scheme list");
    cmd->add_option("--random-tx-rule", o.random_tx_rule, "solver | closed_form | linear_op");
    cmd->add_option("--solver-variant", o.solver_variant,
                    "numeric_integral | paper_eq6 | derived_arccot");
    cmd->add_option("--fixed-p", o.fixed_p, "global p for the fixed_p scheme");
    cmd->add_option("--interference,-I", o.interference, "measured interference (linear)");
    cmd->add_option("--window", o.window, "torus side length");
    cmd->add_option("--slots", o.slots, "slots per replication");
    cmd->add_option("--warmup", o.warmup, "warmup slots (excluded from scoring)");
    cmd->add_option("--replications", o.replications, "independent replications");
    cmd->add_option("--seed", o.seed, "base RNG seed");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

/// Layering: defaults < preset < config file < command-line flags.
opmac::RunConfig build_config(const CLI::App* cmd, const CommonOpts& o) {
    opmac::RunConfig cfg;
    if (!o.preset.empty()) cfg = opmac::preset_config(o.preset);
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw std::invalid_argument("cannot open config file '" + o.config_path + "'");
        nlohmann::json file_json;
        try {
            in >> file_json;
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
        }
        opmac::apply_config_json(cfg, file_json);
    }

    nlohmann::json flags;
    if (cmd->count("--lambda")) flags["lambda"] = o.lambda;
    if (cmd->count("--alpha")) flags["alpha"] = o.alpha;
    if (cmd->count("--theta-db")) flags["theta_db"] = o.theta_db;
    if (cmd->count("--d")) flags["d"] = o.d;
    if (cmd->count("--beta-db")) flags["beta_db"] = o.beta_db;
    if (cmd->count("--duplex")) flags["duplex"] = o.duplex;
    if (cmd->count("--schemes")) flags["schemes"] = split_csv(o.schemes_csv);
    if (cmd->count("--random-tx-rule")) flags["random_tx_rule"] = o.random_tx_rule;
    if (cmd->count("--solver-variant")) flags["solver_variant"] = o.solver_variant;
    if (cmd->count("--fixed-p")) flags["fixed_p"] = o.fixed_p;
    if (cmd->count("--interference")) flags["interference"] = o.interference;
    if (cmd->count("--window")) flags["window"] = o.window;
    if (cmd->count("--slots")) flags["slots"] = o.slots;
    if (cmd->count("--warmup")) flags["warmup"] = o.warmup;
    if (cmd->count("--replications")) flags["replications"] = o.replications;
    if (cmd->count("--seed")) flags["seed"] = static_cast<std::uint64_t>(o.seed);
    if (cmd->count("--out")) flags["out_dir"] = o.out_dir;
    if (cmd->count("--label")) flags["label"] = o.label;
    opmac::apply_config_json(cfg, flags);

    if (cfg.out_dir.empty()) {
        if (const char* env = std::getenv("OPMAC_OUT_DIR")) cfg.out_dir = env;
    }
    opmac::validate_config(cfg);
    return cfg;
}

int cmd_solve(const CLI::App* cmd, const CommonOpts& o) {
    const opmac::RunConfig cfg = build_config(cmd, o);
    const opmac::SystemParams params = cfg.system_params();
    const double I = cfg.interference;
    const double R = opmac::empty_ball_radius(I, params);
    std::printf("I = %s\nR = %s   (eq3 residual %.3e)\n", opmac::format_g10(I).c_str(),
                opmac::format_g10(R).c_str(), opmac::empty_ball_residual(I, R, params));
    for (auto v : {opmac::RhsVariant::NumericIntegral, opmac::RhsVariant::PaperEq6,
                   opmac::RhsVariant::DerivedArccot}) {
        try {
            const auto r = opmac::solve_optimal_p(I, params, v);
            std::printf("%-17s p* = %-14s residual = %.3e  clamped = %s\n",
                        opmac::to_string(v), opmac::format_g10(r.p_star).c_str(), r.residual,
                        r.clamped ? "yes" : "no");
        } catch (const std::exception& e) {
            std::printf("%-17s error: %s\n", opmac::to_string(v), e.what());
        }
    }
    return 0;
}

int cmd_approx(const CLI::App* cmd, const CommonOpts& o) {
    const opmac::RunConfig cfg = build_config(cmd, o);
    const opmac::SystemParams params = cfg.system_params();
    const auto c = opmac::quadratic_coefficients(cfg.interference, params);
    const double p = opmac::closed_form_p(cfg.interference, params);
    std::printf("regime = %s\nC1 = %s\nC2 = %s\nC3 = %s\np* = %s\n", opmac::to_string(c.regime),
                opmac::format_g10(c.c1).c_str(), opmac::format_g10(c.c2).c_str(),
                opmac::format_g10(c.c3).c_str(), opmac::format_g10(p).c_str());
    return 0;
}

int cmd_op(const CLI::App* cmd, const CommonOpts& o) {
    const opmac::RunConfig cfg = build_config(cmd, o);
    const opmac::SystemParams params = cfg.system_params();
    const bool fd = params.duplex == opmac::Duplex::Full;
    const auto est = opmac::estimate_opportunity(cfg.interference, params, fd);
    std::printf("I = %s\nR = %s   (eq3 residual %.3e)\nOP = %s   (duplex %s)\n",
                opmac::format_g10(est.measured_interference).c_str(),
                opmac::format_g10(est.ball_radius).c_str(),
                opmac::empty_ball_residual(est.measured_interference, est.ball_radius, params),
                opmac::format_g10(est.op).c_str(), opmac::to_string(params.duplex));
    return 0;
}

int cmd_simulate(const CLI::App* cmd, const CommonOpts& o) {
    const opmac::RunConfig cfg = build_config(cmd, o);
    const auto out = opmac::run_simulate_command(cfg, o.threads);
    std::printf("wrote %s\nwrote %s\n", out.csv_path.c_str(), out.json_path.c_str());
    return 0;
}

int cmd_sweep(const CLI::App* cmd, const CommonOpts& o) {
    const opmac::RunConfig cfg = build_config(cmd, o);
    const auto out = opmac::run_sweep_command(cfg, o.threads);
    std::printf("wrote %s\nwrote %s\n", out.csv_path.c_str(), out.json_path.c_str());
    return 0;
}

struct DemoOpts {
    double h11 = 0.04, h22 = 0.04, h12 = 0.05, h21 = 0.05;
    double external_I = 0.01;
    double op1 = 0.8, op2 = 0.5;
};

int cmd_demo(const CLI::App* cmd, const CommonOpts& o, const DemoOpts& d) {
    const opmac::RunConfig cfg = build_config(cmd, o);
    const auto table = opmac::two_pair_demo({d.h11, d.h22, d.h12, d.h21}, d.external_I,
                                            d.op1, d.op2);
    std::printf("%-10s %12s %12s %14s %14s %10s %10s\n", "mode", "sir1", "sir2", "sir1_active",
                "sir2_active", "res1", "res2");
    for (const auto& m : table)
        std::printf("%-10s %12.6g %12.6g %14.6g %14.6g %10.4g %10.4g\n", m.mode.c_str(),
                    m.sir1, m.sir2, m.sir1_active, m.sir2_active, m.resource1, m.resource2);
    const auto out = opmac::run_demo_command(cfg, {d.h11, d.h22, d.h12, d.h21}, d.external_I,
                                             d.op1, d.op2);
    std::printf("wrote %s\nwrote %s\n", out.csv_path.c_str(), out.json_path.c_str());
    return 0;
}

int cmd_preset_list() {
    for (const auto& name : opmac::preset_names()) {
        const auto cfg = opmac::preset_config(name);
        std::printf("%-6s alpha=%g theta_db=%g d=%g beta_db=%g sweep=%s/%s points=%zu\n",
                    name.c_str(), cfg.alpha, cfg.theta_db, cfg.d, cfg.beta_db,
                    cfg.sweep_kind.c_str(), cfg.sweep_axis.c_str(), cfg.sweep_values.size());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"opportunistic random access simulator and optimizer"};
    app.require_subcommand(1);

    CommonOpts common;
    DemoOpts demo_opts;

    auto* solve = app.add_subcommand("solve", "optimal p* for a measured interference");
    add_common_options(solve, common);
    auto* approx = app.add_subcommand("approx", "closed-form approximate p* (alpha=4)");
    add_common_options(approx, common);
    auto* op = app.add_subcommand("op", "opportunistic probability for a measured interference");
    add_common_options(op, common);
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo run at one parameter point");
    add_common_options(simulate, common);
    auto* sweep = app.add_subcommand("sweep", "parameter sweep (simulation, optimizer or OP curve)");
    add_common_options(sweep, common);
    auto* demo = app.add_subcommand("demo", "two-pair access-mode comparison table");
    add_common_options(demo, common);
    demo->add_option("--h11", demo_opts.h11, "direct gain, pair 1");
    demo->add_option("--h22", demo_opts.h22, "direct gain, pair 2");
    demo->add_option("--h12", demo_opts.h12, "cross gain TX1 -> RX2");
    demo->add_option("--h21", demo_opts.h21, "cross gain TX2 -> RX1");
    demo->add_option("--external-I", demo_opts.external_I, "constant external interference");
    demo->add_option("--op1", demo_opts.op1, "opportunity of node 1");
    demo->add_option("--op2", demo_opts.op2, "opportunity of node 2");
    auto* preset = app.add_subcommand("preset", "preset management");
    auto* preset_list = preset->add_subcommand("list", "list bundled presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(solve, common);
        if (approx->parsed()) return cmd_approx(approx, common);
        if (op->parsed()) return cmd_op(op, common);
        if (simulate->parsed()) return cmd_simulate(simulate, common);
        if (sweep->parsed()) return cmd_sweep(sweep, common);
        if (demo->parsed()) return cmd_demo(demo, common, demo_opts);
        if (preset->parsed()) {
            if (preset_list->parsed()) return cmd_preset_list();
            std::cerr << "usage: opmac preset list\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
