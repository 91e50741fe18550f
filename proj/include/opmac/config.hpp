#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "opmac/params.hpp"
#include "opmac/schemes.hpp"
#include "opmac/simulator.hpp"
#include "opmac/sweep.hpp"
#include "opmac/units.hpp"

namespace opmac {

/// Flat, human-editable run configuration. dB/dBm fields are converted to
/// linear exactly once, in the accessors below; everything downstream is
/// linear. Unknown keys are rejected by name.
struct RunConfig {
    // system parameters (I/O units)
    double lambda = 1e-3;
    double alpha = 4.0;
    double theta_db = 0.0;
    double d = 2.0;
    double beta_db = -110.0;
    std::string duplex = "full";

    // schemes
    std::vector<std::string> schemes = {"random_tx"};
    std::string random_tx_rule = "solver";
    std::string solver_variant = "numeric_integral";
    double fixed_p = 1.0;
    double csma_sense_dbm = -30.0;
    double tx_power_dbm = 23.0;
    int csma_backoff_window = 16;
    double csma_contention_overhead = 0.0;

    // simulation controls
    double window = 100.0;
    long slots = 1000;
    long warmup = 100;
    int replications = 10;
    std::uint64_t seed = 1;
    std::string measurement_mode = "instant";
    double interference_floor = 1e-12;
    bool use_policy_table = true;

    // sweep axes and single-shot inputs
    std::string sweep_kind = "simulation"; // simulation | optimizer | op_curve
    std::string sweep_axis = "lambda";     // lambda | theta | interference
    std::vector<double> sweep_values;
    double interference = 0.05; ///< fixed measured I for optimizer sweeps / solve / op

    // output
    std::string out_dir;
    std::string label = "run";

    bool operator==(const RunConfig&) const = default;

    // ---- converted views -------------------------------------------------

    SystemParams system_params() const {
        SystemParams p;
        p.lambda = lambda;
        p.alpha = alpha;
        p.theta = db_to_linear(theta_db);
        p.d = d;
        p.beta = db_to_linear(beta_db);
        p.duplex = parse_duplex(duplex);
        p.validate();
        return p;
    }

    SchemeConfig scheme_config(const std::string& name) const {
        SchemeConfig sc;
        sc.kind = parse_scheme_kind(name);
        sc.random_tx_rule = parse_random_tx_rule(random_tx_rule);
        sc.solver_variant = parse_solver_variant(solver_variant);
        sc.csma_sense_threshold = dbm_threshold_ratio(csma_sense_dbm, tx_power_dbm);
        sc.csma_backoff_window = csma_backoff_window;
        sc.csma_contention_overhead = csma_contention_overhead;
        sc.fixed_p = fixed_p;
        sc.validate();
        return sc;
    }

    std::vector<SchemeConfig> scheme_configs() const {
        std::vector<SchemeConfig> out;
        for (const auto& name : schemes) out.push_back(scheme_config(name));
        return out;
    }

    SimOptions sim_options() const {
        SimOptions o;
        o.slots = slots;
        o.warmup = warmup;
        o.seed = seed;
        o.measure = parse_measure_mode(measurement_mode);
        o.interference_floor = interference_floor;
        o.use_policy_table = use_policy_table;
        o.validate();
        return o;
    }

    SweepAxis sweep_axis_enum() const {
        if (sweep_axis == "lambda") return SweepAxis::Lambda;
        if (sweep_axis == "theta") return SweepAxis::Theta;
        if (sweep_axis == "interference") return SweepAxis::Interference;
        throw std::invalid_argument("sweep_axis must be lambda, theta or interference, got '" +
                                    sweep_axis + "'");
    }

    // ---- enum parsers ------------------------------------------------------

    static Duplex parse_duplex(const std::string& s) {
        if (s == "full") return Duplex::Full;
        if (s == "half") return Duplex::Half;
        throw std::invalid_argument("duplex must be 'half' or 'full', got '" + s + "'");
    }

    static SchemeKind parse_scheme_kind(const std::string& s) {
        if (s == "max_tx") return SchemeKind::MaxTx;
        if (s == "pc_tx") return SchemeKind::PcTx;
        if (s == "random_tx") return SchemeKind::RandomTx;
        if (s == "csma_ca") return SchemeKind::CsmaCa;
        if (s == "fixed_p") return SchemeKind::FixedP;
        throw std::invalid_argument("unknown scheme '" + s + "'");
    }

    static RandomTxRule parse_random_tx_rule(const std::string& s) {
        if (s == "solver") return RandomTxRule::Solver;
        if (s == "closed_form") return RandomTxRule::ClosedForm;
        if (s == "linear_op") return RandomTxRule::LinearOp;
        throw std::invalid_argument("random_tx_rule must be solver, closed_form or "
                                    "linear_op, got '" + s + "'");
    }

    static RhsVariant parse_solver_variant(const std::string& s) {
        if (s == "numeric_integral") return RhsVariant::NumericIntegral;
        if (s == "paper_eq6") return RhsVariant::PaperEq6;
        if (s == "derived_arccot") return RhsVariant::DerivedArccot;
        throw std::invalid_argument("solver_variant must be numeric_integral, paper_eq6 or "
                                    "derived_arccot, got '" + s + "'");
    }

    static MeasureMode parse_measure_mode(const std::string& s) {
        if (s == "instant") return MeasureMode::Instant;
        if (s == "fading_averaged") return MeasureMode::FadingAveraged;
        throw std::invalid_argument("measurement_mode must be instant or fading_averaged, "
                                    "got '" + s + "'");
    }
};

namespace detail {

template <typename T>
T config_get(const nlohmann::json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("config key '" + key + "' has the wrong type");
    }
}

} // namespace detail

/// Applies a flat JSON object onto a config, rejecting unknown keys by name
/// and validating ranges. CLI overrides reuse this with a synthesized object.
inline void apply_config_json(RunConfig& cfg, const nlohmann::json& j) {
    using detail::config_get;
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "lambda") cfg.lambda = config_get<double>(value, key);
        else if (key == "alpha") cfg.alpha = config_get<double>(value, key);
        else if (key == "theta_db") cfg.theta_db = config_get<double>(value, key);
        else if (key == "d") cfg.d = config_get<double>(value, key);
        else if (key == "beta_db") cfg.beta_db = config_get<double>(value, key);
        else if (key == "duplex") cfg.duplex = config_get<std::string>(value, key);
        else if (key == "schemes") cfg.schemes = config_get<std::vector<std::string>>(value, key);
        else if (key == "random_tx_rule") cfg.random_tx_rule = config_get<std::string>(value, key);
        else if (key == "solver_variant") cfg.solver_variant = config_get<std::string>(value, key);
        else if (key == "fixed_p") cfg.fixed_p = config_get<double>(value, key);
        else if (key == "csma_sense_dbm") cfg.csma_sense_dbm = config_get<double>(value, key);
        else if (key == "tx_power_dbm") cfg.tx_power_dbm = config_get<double>(value, key);
        else if (key == "csma_backoff_window") cfg.csma_backoff_window = config_get<int>(value, key);
        else if (key == "csma_contention_overhead")
            cfg.csma_contention_overhead = config_get<double>(value, key);
        else if (key == "window") cfg.window = config_get<double>(value, key);
        else if (key == "slots") cfg.slots = config_get<long>(value, key);
        else if (key == "warmup") cfg.warmup = config_get<long>(value, key);
        else if (key == "replications") cfg.replications = config_get<int>(value, key);
        else if (key == "seed") cfg.seed = config_get<std::uint64_t>(value, key);
        else if (key == "measurement_mode") cfg.measurement_mode = config_get<std::string>(value, key);
        else if (key == "interference_floor") cfg.interference_floor = config_get<double>(value, key);
        else if (key == "use_policy_table") cfg.use_policy_table = config_get<bool>(value, key);
        else if (key == "sweep_kind") cfg.sweep_kind = config_get<std::string>(value, key);
        else if (key == "sweep_axis") cfg.sweep_axis = config_get<std::string>(value, key);
        else if (key == "sweep_values") cfg.sweep_values = config_get<std::vector<double>>(value, key);
        else if (key == "interference") cfg.interference = config_get<double>(value, key);
        else if (key == "out_dir") cfg.out_dir = config_get<std::string>(value, key);
        else if (key == "label") cfg.label = config_get<std::string>(value, key);
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

/// Range checks with the offending key named. Called after all overrides.
inline void validate_config(const RunConfig& cfg) {
    if (!(cfg.alpha > 2.0))
        throw std::invalid_argument("config key 'alpha' must exceed 2 (path-loss model "
                                    "diverges otherwise), got " + std::to_string(cfg.alpha));
    if (!(cfg.lambda >= 0.0))
        throw std::invalid_argument("config key 'lambda' must be nonnegative");
    if (!(cfg.d > 0.0)) throw std::invalid_argument("config key 'd' must be positive");
    if (cfg.beta_db > 0.0)
        throw std::invalid_argument("config key 'beta_db' must be <= 0 dB (beta in [0,1])");
    if (!(cfg.window > 0.0)) throw std::invalid_argument("config key 'window' must be positive");
    if (cfg.replications < 1)
        throw std::invalid_argument("config key 'replications' must be >= 1");
    if (!(cfg.interference > 0.0))
        throw std::invalid_argument("config key 'interference' must be positive");
    if (cfg.schemes.empty())
        throw std::invalid_argument("config key 'schemes' must name at least one scheme");
    // enum fields and dependent values validate in the accessors
    cfg.system_params();
    cfg.scheme_configs();
    cfg.sim_options();
    cfg.sweep_axis_enum();
    if (cfg.sweep_kind != "simulation" && cfg.sweep_kind != "optimizer" &&
        cfg.sweep_kind != "op_curve")
        throw std::invalid_argument("config key 'sweep_kind' must be simulation, optimizer "
                                    "or op_curve, got '" + cfg.sweep_kind + "'");
}

inline RunConfig parse_config_json(const nlohmann::json& j) {
    RunConfig cfg;
    apply_config_json(cfg, j);
    validate_config(cfg);
    return cfg;
}

inline RunConfig parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config_json(j);
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

/// Full round-trippable dump: parse_config_json(emit_config(c)) == c.
inline nlohmann::json emit_config(const RunConfig& cfg) {
    nlohmann::json j;
    j["lambda"] = cfg.lambda;
    j["alpha"] = cfg.alpha;
    j["theta_db"] = cfg.theta_db;
    j["d"] = cfg.d;
    j["beta_db"] = cfg.beta_db;
    j["duplex"] = cfg.duplex;
    j["schemes"] = cfg.schemes;
    j["random_tx_rule"] = cfg.random_tx_rule;
    j["solver_variant"] = cfg.solver_variant;
    j["fixed_p"] = cfg.fixed_p;
    j["csma_sense_dbm"] = cfg.csma_sense_dbm;
    j["tx_power_dbm"] = cfg.tx_power_dbm;
    j["csma_backoff_window"] = cfg.csma_backoff_window;
    j["csma_contention_overhead"] = cfg.csma_contention_overhead;
    j["window"] = cfg.window;
    j["slots"] = cfg.slots;
    j["warmup"] = cfg.warmup;
    j["replications"] = cfg.replications;
    j["seed"] = cfg.seed;
    j["measurement_mode"] = cfg.measurement_mode;
    j["interference_floor"] = cfg.interference_floor;
    j["use_policy_table"] = cfg.use_policy_table;
    j["sweep_kind"] = cfg.sweep_kind;
    j["sweep_axis"] = cfg.sweep_axis;
    j["sweep_values"] = cfg.sweep_values;
    j["interference"] = cfg.interference;
    j["out_dir"] = cfg.out_dir;
    j["label"] = cfg.label;
    return j;
}

// ---- bundled figure presets ------------------------------------------------

namespace detail {

inline std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < n; ++i)
        v[i] = std::pow(10.0, llo + (lhi - llo) * i / static_cast<double>(n - 1));
    return v;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * i / static_cast<double>(n - 1);
    return v;
}

} // namespace detail

inline std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4a", "fig4b"}; }

/// Parameter sets of the reproduced experiments. Caption-pinned values (alpha,
/// d, theta/beta in dB, lambda) come from the source figures; axis grids and
/// the fixed measured-interference levels are inputs the captions leave open
/// and are chosen so the comparison region is meaningful (see README).
inline RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.label = name;
    if (name == "fig2") {
        cfg.lambda = 1e-3;
        cfg.alpha = 4.0;
        cfg.theta_db = 0.0;
        cfg.d = 2.0;
        cfg.beta_db = -110.0;
        cfg.sweep_kind = "op_curve";
        cfg.sweep_axis = "interference";
        cfg.sweep_values = detail::logspace(1e-4, 1e3, 29);
    } else if (name == "fig3") {
        cfg.alpha = 4.0;
        cfg.theta_db = 3.0;
        cfg.d = 3.0;
        cfg.beta_db = -110.0;
        cfg.duplex = "full";
        cfg.schemes = {"max_tx", "pc_tx", "random_tx", "csma_ca"};
        cfg.sweep_kind = "simulation";
        cfg.sweep_axis = "lambda";
        cfg.sweep_values = detail::logspace(5e-4, 1e-2, 7);
        cfg.window = 100.0;
        cfg.slots = 1200;
        cfg.warmup = 200;
        cfg.replications = 30;
    } else if (name == "fig4a") {
        cfg.lambda = 1e-3;
        cfg.alpha = 4.0;
        cfg.theta_db = 0.0;
        cfg.d = 2.0;
        cfg.beta_db = -110.0;
        cfg.sweep_kind = "optimizer";
        cfg.sweep_axis = "theta";
        cfg.sweep_values = detail::linspace(0.3, 1.2, 15);
        cfg.interference = 0.05;
    } else if (name == "fig4b") {
        cfg.alpha = 4.0;
        cfg.theta_db = 0.0;
        cfg.d = 2.0;
        cfg.beta_db = -110.0;
        cfg.sweep_kind = "optimizer";
        cfg.sweep_axis = "lambda";
        cfg.sweep_values = detail::logspace(1e-4, 3.1622776601683794e-2, 15);
        cfg.interference = 0.0475;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "' (available: fig2, fig3, "
                                    "fig4a, fig4b)");
    }
    return cfg;
}

} // namespace opmac
