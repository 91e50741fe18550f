#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "opmac/closed_form.hpp"
#include "opmac/fixed_point.hpp"
#include "opmac/opportunity.hpp"
#include "opmac/params.hpp"
#include "opmac/simulator.hpp"

namespace opmac {

/// Solver-vs-approximation comparison at one grid point. `abs_err` is the
/// closed form's distance to the best-matching solver variant; a failed closed
/// form (no real root) leaves NaNs and a note in `error`.
struct OptimizerSweepRow {
    double axis = 0.0;
    double op = 0.0;
    double p_eq5 = 0.0;    ///< NumericIntegral solution of the full equation
    double p_eq6 = 0.0;    ///< printed alpha=4 arctan form
    double p_arccot = 0.0; ///< analytic alpha=4 reduction
    double p_closed = std::numeric_limits<double>::quiet_NaN();
    double abs_err = std::numeric_limits<double>::quiet_NaN();
    std::string error;
};

enum class SweepAxis { Lambda, Theta, Interference };

inline const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::Lambda: return "lambda";
        case SweepAxis::Theta: return "theta";
        default: return "interference";
    }
}

namespace detail {

inline OptimizerSweepRow optimizer_point(double axis_value, double I,
                                         const SystemParams& params) {
    OptimizerSweepRow row;
    row.axis = axis_value;
    row.op = opportunistic_probability(I, params);
    row.p_eq5 = solve_optimal_p(I, params, RhsVariant::NumericIntegral).p_star;
    row.p_eq6 = solve_optimal_p(I, params, RhsVariant::PaperEq6).p_star;
    row.p_arccot = solve_optimal_p(I, params, RhsVariant::DerivedArccot).p_star;
    try {
        row.p_closed = closed_form_p(I, params);
        row.abs_err = std::min({std::fabs(row.p_closed - row.p_eq5),
                                std::fabs(row.p_closed - row.p_eq6),
                                std::fabs(row.p_closed - row.p_arccot)});
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

} // namespace detail

/// Optimal-p comparison along a theta or lambda grid at fixed measured
/// interference (the Fig. 4 style sweeps).
inline std::vector<OptimizerSweepRow> optimizer_sweep(const SystemParams& base,
                                                      SweepAxis axis,
                                                      std::span<const double> values,
                                                      double I) {
    if (values.empty()) throw std::invalid_argument("optimizer_sweep: empty grid");
    if (axis == SweepAxis::Interference)
        throw std::invalid_argument("optimizer_sweep: use op_curve for interference sweeps");
    std::vector<OptimizerSweepRow> rows;
    rows.reserve(values.size());
    for (double v : values) {
        SystemParams p = base;
        (axis == SweepAxis::Lambda ? p.lambda : p.theta) = v;
        p.validate();
        rows.push_back(detail::optimizer_point(v, I, p));
    }
    return rows;
}

/// p* as a function of OP, parametrized by the measured interference grid
/// (the Fig. 2 style curve).
inline std::vector<OptimizerSweepRow> op_curve(const SystemParams& base,
                                               std::span<const double> interference_grid) {
    if (interference_grid.empty()) throw std::invalid_argument("op_curve: empty grid");
    std::vector<OptimizerSweepRow> rows;
    rows.reserve(interference_grid.size());
    for (double I : interference_grid)
        rows.push_back(detail::optimizer_point(I, I, base));
    return rows;
}

/// One scheme at one sweep grid point.
struct SimSweepRow {
    double axis = 0.0;
    std::string scheme;
    double mean_link_throughput = std::numeric_limits<double>::quiet_NaN();
    double pf_utility = std::numeric_limits<double>::quiet_NaN();
    double ci_halfwidth = std::numeric_limits<double>::quiet_NaN();
    int replications = 0;
    std::string error;
};

/// Monte Carlo throughput sweep over a lambda grid for each scheme. Per-point
/// failures are recorded in the row and the sweep continues.
inline std::vector<SimSweepRow> simulation_sweep(const SystemParams& base,
                                                 std::span<const SchemeConfig> schemes,
                                                 std::span<const double> lambda_grid,
                                                 const SimOptions& opts, double window,
                                                 int replications, std::uint64_t seed,
                                                 unsigned threads = 0) {
    if (lambda_grid.empty()) throw std::invalid_argument("simulation_sweep: empty grid");
    if (schemes.empty()) throw std::invalid_argument("simulation_sweep: no schemes");
    std::vector<SimSweepRow> rows;
    rows.reserve(lambda_grid.size() * schemes.size());
    for (std::size_t gi = 0; gi < lambda_grid.size(); ++gi) {
        SystemParams params = base;
        params.lambda = lambda_grid[gi];
        for (std::size_t si = 0; si < schemes.size(); ++si) {
            SimSweepRow row;
            row.axis = lambda_grid[gi];
            const SchemeConfig& sc = schemes[si];
            row.scheme = to_string(sc.kind);
            if (sc.kind == SchemeKind::RandomTx)
                row.scheme += std::string("/") + to_string(sc.random_tx_rule);
            try {
                const std::uint64_t point_seed = mix64(seed, gi, si);
                const ThroughputReport rep = simulate_replications(
                    params, sc, opts, window, replications, point_seed, threads);
                row.mean_link_throughput = rep.mean_link_throughput;
                row.pf_utility = rep.pf_utility;
                row.ci_halfwidth = rep.tput_ci95;
                row.replications = rep.replications;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace opmac
