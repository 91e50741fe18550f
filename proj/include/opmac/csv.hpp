#pragma once

#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>

#include "opmac/sweep.hpp"
#include "opmac/two_pair.hpp"

namespace opmac {

/// Fixed numeric rendering for all CSV output: 10 significant digits, so
/// identical runs produce byte-identical files.
inline std::string format_g10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace detail {

inline std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // '\n' line endings everywhere
    if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
    return out;
}

} // namespace detail

/// Simulation sweep: one row per grid point per scheme, grid order then scheme
/// order. A failed point keeps its row with NaN metrics and zero replications.
inline void write_simulation_csv(const std::string& path, const std::string& axis_name,
                                 std::span<const SimSweepRow> rows) {
    auto out = detail::open_csv(path);
    out << axis_name << ",scheme,mean_link_throughput,pf_utility,ci_halfwidth,replications\n";
    for (const auto& r : rows) {
        out << format_g10(r.axis) << ',' << r.scheme << ',' << format_g10(r.mean_link_throughput)
            << ',' << format_g10(r.pf_utility) << ',' << format_g10(r.ci_halfwidth) << ','
            << r.replications << '\n';
    }
}

/// Optimizer sweep (Fig. 4 style): per-variant solutions and the closed form's
/// distance to the best-matching variant.
inline void write_optimizer_csv(const std::string& path, const std::string& axis_name,
                                std::span<const OptimizerSweepRow> rows) {
    auto out = detail::open_csv(path);
    out << axis_name << ",p_solver_eq5,p_solver_eq6,p_solver_arccot,p_closed_form,abs_err\n";
    for (const auto& r : rows) {
        out << format_g10(r.axis) << ',' << format_g10(r.p_eq5) << ',' << format_g10(r.p_eq6)
            << ',' << format_g10(r.p_arccot) << ',' << format_g10(r.p_closed) << ','
            << format_g10(r.abs_err) << '\n';
    }
}

/// OP-parametrized curve (Fig. 2 style): adds the OP column.
inline void write_op_curve_csv(const std::string& path,
                               std::span<const OptimizerSweepRow> rows) {
    auto out = detail::open_csv(path);
    out << "interference,op,p_solver_eq5,p_solver_eq6,p_solver_arccot,p_closed_form,abs_err\n";
    for (const auto& r : rows) {
        out << format_g10(r.axis) << ',' << format_g10(r.op) << ',' << format_g10(r.p_eq5)
            << ',' << format_g10(r.p_eq6) << ',' << format_g10(r.p_arccot) << ','
            << format_g10(r.p_closed) << ',' << format_g10(r.abs_err) << '\n';
    }
}

inline void write_demo_csv(const std::string& path, std::span<const TwoPairMode> modes) {
    auto out = detail::open_csv(path);
    out << "mode,sir1,sir2,sir1_active,sir2_active,resource1,resource2\n";
    for (const auto& m : modes) {
        out << m.mode << ',' << format_g10(m.sir1) << ',' << format_g10(m.sir2) << ','
            << format_g10(m.sir1_active) << ',' << format_g10(m.sir2_active) << ','
            << format_g10(m.resource1) << ',' << format_g10(m.resource2) << '\n';
    }
}

} // namespace opmac
