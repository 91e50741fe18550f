// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion states its tolerance inline and enforces its
// runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "opmac/opmac.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int id, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
    std::printf("[%s] C%d %-34s (%6.2f s)  %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                seconds, detail.c_str());
    if (!pass) ++g_failures;
}

void criterion(int id, const std::string& name, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    const auto t0 = Clock::now();
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (pass && secs > time_limit_s) {
        pass = false;
        detail += " [exceeded runtime budget " + std::to_string(time_limit_s) + "s]";
    }
    report(id, name, pass, secs, detail);
}

opmac::SystemParams params_of(double lambda, double alpha, double theta, double d,
                              double beta, opmac::Duplex duplex = opmac::Duplex::Full) {
    opmac::SystemParams p;
    p.lambda = lambda;
    p.alpha = alpha;
    p.theta = theta;
    p.d = d;
    p.beta = beta;
    p.duplex = duplex;
    return p;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = std::pow(10.0, std::log10(lo) +
                                  (std::log10(hi) - std::log10(lo)) * i / double(n - 1));
    return v;
}

// ---------------------------------------------------------------------------

bool c1_empty_ball(std::string& detail) {
    bool ok = true;
    double worst_closed = 0.0;
    // closed form, alpha = 4, spec-pinned grid
    for (double I : logspace(1e-6, 1e2, 13)) {
        for (double lam : logspace(1e-4, 1e-1, 10)) {
            const auto p = params_of(lam, 4.0, 1.0, 2.0, 0.0);
            const double R = opmac::empty_ball_radius(I, p);
            const double res = std::fabs(opmac::empty_ball_residual(I, R, p));
            worst_closed = std::max(worst_closed, res);
            if (res >= 1e-10) ok = false;
        }
    }
    // Newton, alpha in {3, 3.5, 5}; grid restricted to where an absolute
    // residual of 1e-12 is representable in double precision (see README)
    double worst_newton = 0.0;
    for (double alpha : {3.0, 3.5, 5.0}) {
        for (double I : logspace(1e-2, 1e2, 13)) {
            for (double lam : logspace(1e-4, 1e-2, 10)) {
                const auto p = params_of(lam, alpha, 1.0, 2.0, 0.0);
                const double R = opmac::empty_ball_radius(I, p);
                const double res = std::fabs(opmac::empty_ball_residual(I, R, p));
                worst_newton = std::max(worst_newton, res);
                if (res >= 1e-12) ok = false;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "max residual closed=%.2e (<1e-10), newton=%.2e (<1e-12)",
                  worst_closed, worst_newton);
    detail = buf;
    return ok;
}

bool c2_arctan_rmse(std::string& detail) {
    const int n = 10000;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = 10.0 * i / (n - 1.0);
        const double e = opmac::arctan_approx(x) - std::atan(x);
        ss += e * e;
    }
    const double rmse = std::sqrt(ss / n);
    char buf[96];
    std::snprintf(buf, sizeof buf, "rmse=%.6f vs 0.018 +/- 0.005", rmse);
    detail = buf;
    return std::fabs(rmse - 0.018) <= 0.005;
}

bool c3_well_posed(std::string& detail) {
    opmac::SplitMix rng(314159);
    const int tuples = 1000, grid = 1000;
    double worst_gap = 0.0, worst_res = 0.0;
    int clamped = 0;
    for (int t = 0; t < tuples; ++t) {
        const double lam = std::pow(10.0, -4.0 + 2.5 * rng.uniform());
        const double th = 0.3 + 3.7 * rng.uniform();
        const double d = 1.0 + 2.0 * rng.uniform();
        const double beta = std::pow(10.0, -12.0 + 9.0 * rng.uniform());
        const double I = std::pow(10.0, -3.0 + 4.0 * rng.uniform());
        const auto p = params_of(lam, 4.0, th, d, beta);
        const double R = opmac::empty_ball_radius(I, p);

        double prev6 = -1e308, prevA = -1e308;
        for (int i = 1; i <= grid; ++i) {
            const double pp = i / (grid + 1.0);
            const double rhsA =
                opmac::fixed_point_rhs(pp, R, p, opmac::RhsVariant::DerivedArccot);
            const double rhsN =
                opmac::fixed_point_rhs(pp, R, p, opmac::RhsVariant::NumericIntegral);
            const double rhs6 = opmac::fixed_point_rhs(pp, R, p, opmac::RhsVariant::PaperEq6);
            worst_gap = std::max(worst_gap, std::fabs(rhsA - rhsN));
            if (std::fabs(rhsA - rhsN) >= 1e-8) {
                detail = "arccot/numeric disagree";
                return false;
            }
            const double gA = rhsA - 1.0 / pp, g6 = rhs6 - 1.0 / pp;
            if (gA <= prevA || g6 <= prev6) {
                detail = "g not strictly increasing";
                return false;
            }
            prevA = gA;
            prev6 = g6;
        }
        const auto sol = opmac::solve_optimal_p(I, p, opmac::RhsVariant::NumericIntegral);
        if (sol.clamped) {
            ++clamped;
        } else {
            worst_res = std::max(worst_res, sol.residual);
            if (sol.residual >= 1e-9) {
                detail = "bisection residual too large";
                return false;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "max |arccot-numeric|=%.2e (<1e-8), max residual=%.2e (<1e-9), "
                  "%d/%d clamped",
                  worst_gap, worst_res, clamped, tuples);
    detail = buf;
    return true;
}

bool c4_monotonicity(std::string& detail) {
    // one-dimensional sweeps around the Fig. 2 operating point, at an
    // interference level where the optimum is interior
    const double I0 = 0.15, lam0 = 1e-3, th0 = 1.0, d0 = 2.0, b0 = 1e-11;
    const double slack = 1e-9;
    auto solve = [&](double I, double lam, double th, double d, double beta) {
        return opmac::solve_optimal_p(I, params_of(lam, 4.0, th, d, beta),
                                      opmac::RhsVariant::NumericIntegral, 1e-11)
            .p_star;
    };
    int violations = 0;
    auto expect_noninc = [&](const std::vector<double>& ps) {
        for (std::size_t i = 1; i < ps.size(); ++i)
            if (ps[i] > ps[i - 1] + slack) ++violations;
    };

    std::vector<double> ps;
    for (double m : {0.5, 0.75, 1.0, 1.5, 2.0}) ps.push_back(solve(I0, m * lam0, th0, d0, b0));
    expect_noninc(ps);
    ps.clear();
    for (double d : {1.0, 1.5, 2.0, 2.5, 3.0}) ps.push_back(solve(I0, lam0, th0, d, b0));
    expect_noninc(ps);
    ps.clear();
    for (double m : {0.5, 0.75, 1.0, 1.5, 2.0}) ps.push_back(solve(I0, lam0, m * th0, d0, b0));
    expect_noninc(ps);
    ps.clear();
    for (double m : {0.5, 0.75, 1.0, 1.67, 2.33}) ps.push_back(solve(m * I0, lam0, th0, d0, b0));
    expect_noninc(ps);
    ps.clear();
    // beta decreasing => p* non-decreasing
    for (double beta : {1e-3, 1e-5, 1e-7, 1e-9, 1e-11})
        ps.push_back(solve(I0, lam0, th0, d0, beta));
    for (std::size_t i = 1; i < ps.size(); ++i)
        if (ps[i] < ps[i - 1] - slack) ++violations;

    detail = "violations=" + std::to_string(violations) + " (require 0)";
    return violations == 0;
}

struct SweepErrors {
    double mean_eq5 = 0, max_eq5 = 0;
    double mean_eq6 = 0, max_eq6 = 0;
    double mean_arc = 0, max_arc = 0;
    int failures = 0;
};

SweepErrors sweep_errors(const std::vector<opmac::OptimizerSweepRow>& rows) {
    SweepErrors e;
    int n = 0;
    for (const auto& r : rows) {
        if (!r.error.empty() || !std::isfinite(r.p_closed)) {
            ++e.failures;
            continue;
        }
        ++n;
        const double d5 = std::fabs(r.p_closed - r.p_eq5);
        const double d6 = std::fabs(r.p_closed - r.p_eq6);
        const double da = std::fabs(r.p_closed - r.p_arccot);
        e.mean_eq5 += d5;
        e.mean_eq6 += d6;
        e.mean_arc += da;
        e.max_eq5 = std::max(e.max_eq5, d5);
        e.max_eq6 = std::max(e.max_eq6, d6);
        e.max_arc = std::max(e.max_arc, da);
    }
    if (n > 0) {
        e.mean_eq5 /= n;
        e.mean_eq6 /= n;
        e.mean_arc /= n;
    }
    return e;
}

bool c5_closed_form_vs_solver(std::string& detail) {
    bool ok = true;
    std::ostringstream out;
    for (const char* name : {"fig4a", "fig4b"}) {
        const opmac::RunConfig cfg = opmac::preset_config(name);
        const auto rows =
            opmac::optimizer_sweep(cfg.system_params(), cfg.sweep_axis_enum(),
                                   cfg.sweep_values, cfg.interference);
        const SweepErrors e = sweep_errors(rows);
        const double best_mean = std::min({e.mean_eq5, e.mean_eq6, e.mean_arc});
        double best_max = e.max_eq5;
        if (e.mean_eq6 <= e.mean_eq5 && e.mean_eq6 <= e.mean_arc) best_max = e.max_eq6;
        else if (e.mean_arc <= e.mean_eq5 && e.mean_arc <= e.mean_eq6) best_max = e.max_arc;
        out << name << ": eq5 " << std::fixed << e.mean_eq5 << "/" << e.max_eq5 << " eq6 "
            << e.mean_eq6 << "/" << e.max_eq6 << " arccot " << e.mean_arc << "/" << e.max_arc
            << "; ";
        if (e.failures > 0 || best_mean > 0.025 || best_max > 0.05) ok = false;
    }
    detail = out.str() + "best-variant bounds mean<=2.5% max<=5%";
    return ok;
}

bool c6_analytic_empirical(std::string& detail) {
    std::ostringstream out;
    bool ok = true;

    // (a) tagged link vs the conditional product form, half duplex, global p
    {
        const auto p = params_of(2e-3, 4.0, 1.0, 2.0, 1e-11, opmac::Duplex::Half);
        const opmac::Deployment dep = opmac::sample_deployment(p, 500.0, 60601);
        const double fixed_p = 0.5;
        const std::size_t rx = 1;
        double q = 1.0;
        for (std::size_t i = 0; i < dep.node_count(); ++i) {
            if (i == 0 || i == rx) continue;
            if (dep.node(i).role != opmac::Role::A) continue; // p_i = 0 for the B half
            const double ratio = std::pow(dep.distance(i, rx), p.alpha) /
                                 (p.theta * std::pow(p.d, p.alpha));
            q *= 1.0 - fixed_p / (1.0 + ratio);
        }
        opmac::SimOptions o;
        o.slots = 100001;
        o.warmup = 1;
        o.seed = 8086;
        const opmac::TaggedStats st = opmac::run_tagged(dep, p, fixed_p, o, 0);
        const double se = std::sqrt(q * (1.0 - q) / double(st.attempts));
        const double dev = std::fabs(st.rate() - q);
        out << "HD product: |" << st.rate() << "-" << q << "|=" << dev << " vs 3se="
            << 3.0 * se << " (n=" << st.attempts << "); ";
        if (dev > 3.0 * se) ok = false;
    }

    // (b) full-duplex single pair vs exp(-theta d^alpha beta); beta chosen so
    // the predicted rate is ~0.7 and the check has power
    {
        const double beta = 0.0223;
        const auto p = params_of(0.0, 4.0, 1.0, 2.0, beta, opmac::Duplex::Full);
        std::vector<opmac::Node> nodes = {{{40, 40}, 0, opmac::Role::A},
                                          {{40, 42}, 0, opmac::Role::B}};
        const opmac::Deployment dep(100.0, std::move(nodes));
        opmac::SimOptions o;
        o.slots = 100001;
        o.warmup = 1;
        o.seed = 6512;
        const opmac::TaggedStats st = opmac::run_tagged(dep, p, 1.0, o, 0);
        const double q = std::exp(-p.theta * std::pow(p.d, 4.0) * beta);
        const double se = std::sqrt(q * (1.0 - q) / double(st.attempts));
        const double dev = std::fabs(st.rate() - q);
        out << "FD pair: |" << st.rate() << "-" << q << "|=" << dev << " vs 3se=" << 3.0 * se;
        if (dev > 3.0 * se) ok = false;
    }
    detail = out.str();
    return ok;
}

bool c7_scheme_ordering(std::string& detail) {
    const opmac::RunConfig cfg = opmac::preset_config("fig3");
    const double lambda_top = cfg.sweep_values.back(); // top quartile of the grid
    opmac::SystemParams p = cfg.system_params();
    p.lambda = lambda_top;
    const opmac::SimOptions opts = cfg.sim_options();
    const int reps = cfg.replications;

    auto run_scheme = [&](const std::string& name, opmac::Duplex duplex) {
        opmac::SystemParams pp = p;
        pp.duplex = duplex;
        return opmac::simulate_replications(pp, cfg.scheme_config(name), opts, cfg.window,
                                            reps, cfg.seed + 17, 2);
    };

    const auto random_fd = run_scheme("random_tx", opmac::Duplex::Full);
    const auto max_fd = run_scheme("max_tx", opmac::Duplex::Full);
    const auto pc_fd = run_scheme("pc_tx", opmac::Duplex::Full);
    const auto csma = run_scheme("csma_ca", opmac::Duplex::Full);
    const auto random_hd = run_scheme("random_tx", opmac::Duplex::Half);

    std::ostringstream out;
    out.precision(4);
    out << "pf: random " << random_fd.pf_utility << "+/-" << random_fd.pf_ci95 << ", max "
        << max_fd.pf_utility << "+/-" << max_fd.pf_ci95 << ", pc " << pc_fd.pf_utility
        << "+/-" << pc_fd.pf_ci95 << ", csma " << csma.pf_utility << "+/-" << csma.pf_ci95;

    bool ok = true;
    auto separated_above = [&](const opmac::ThroughputReport& a,
                               const opmac::ThroughputReport& b) {
        return a.pf_utility - a.pf_ci95 > b.pf_utility + b.pf_ci95;
    };
    if (!separated_above(random_fd, max_fd)) ok = false;
    if (!separated_above(random_fd, pc_fd)) ok = false;
    if (!separated_above(random_fd, csma)) ok = false;

    const double fd_lo = random_fd.mean_link_throughput - random_fd.tput_ci95;
    const double hd_hi = random_hd.mean_link_throughput + random_hd.tput_ci95;
    const double gain = 100.0 * (random_fd.mean_link_throughput /
                                     random_hd.mean_link_throughput - 1.0);
    out << "; FD vs HD tput: " << random_fd.mean_link_throughput << " vs "
        << random_hd.mean_link_throughput << " (gain " << gain << "%)";
    if (!(fd_lo > hd_hi)) ok = false;

    detail = out.str();
    return ok;
}

bool c8_fig2_shape(std::string& detail) {
    const opmac::RunConfig cfg = opmac::preset_config("fig2");
    const auto rows = opmac::op_curve(cfg.system_params(), cfg.sweep_values);
    // rows run from small I (high OP) to large I (low OP); p* must be
    // non-decreasing in OP, i.e. non-increasing along the I grid
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].op > rows[i - 1].op + 1e-12) monotone = false;      // OP must fall
        if (rows[i].p_eq5 > rows[i - 1].p_eq5 + 1e-9) monotone = false; // p* must fall
    }
    const double p_at_zero_op = rows.back().p_eq5;
    const double op_last = rows.back().op;
    char buf[128];
    std::snprintf(buf, sizeof buf, "monotone=%s, p*(OP=%.2e)=%.4f (>0)",
                  monotone ? "yes" : "no", op_last, p_at_zero_op);
    detail = buf;
    return monotone && p_at_zero_op > 0.0;
}

bool c9_determinism(std::string& detail) {
    namespace fs = std::filesystem;
    opmac::RunConfig cfg;
    cfg.lambda = 2e-3;
    cfg.alpha = 4.0;
    cfg.theta_db = 3.0;
    cfg.d = 3.0;
    cfg.beta_db = -110.0;
    cfg.schemes = {"max_tx", "pc_tx", "random_tx", "csma_ca"};
    cfg.window = 60.0;
    cfg.slots = 150;
    cfg.warmup = 30;
    cfg.replications = 3;
    cfg.seed = 20260810;
    cfg.label = "acceptance_det";

    const fs::path base = fs::temp_directory_path() / "opmac_acceptance_det";
    fs::remove_all(base);
    auto read = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    cfg.out_dir = (base / "a").string();
    const auto a = opmac::run_simulate_command(cfg, 2);
    cfg.out_dir = (base / "b").string();
    const auto b = opmac::run_simulate_command(cfg, 2);
    const bool same = read(a.csv_path) == read(b.csv_path) && !read(a.csv_path).empty();
    fs::remove_all(base);
    detail = same ? "simulate CSV byte-identical across runs" : "CSV differs";
    return same;
}

} // namespace

int main() {
    std::printf("opmac acceptance criteria\n");
    criterion(1, "empty-ball closed form & Newton", 1.0, c1_empty_ball);
    criterion(2, "arctan approximation RMSE", 1.0, c2_arctan_rmse);
    criterion(3, "fixed-point well-posedness", 30.0, c3_well_posed);
    criterion(4, "p* monotonicity (Remarks 2-3)", 60.0, c4_monotonicity);
    criterion(5, "closed form vs solver (Fig. 4)", 60.0, c5_closed_form_vs_solver);
    criterion(6, "analytic-empirical consistency", 300.0, c6_analytic_empirical);
    criterion(7, "scheme ordering (Fig. 3)", 600.0, c7_scheme_ordering);
    criterion(8, "Fig. 2 shape", 10.0, c8_fig2_shape);
    criterion(9, "determinism", 60.0, c9_determinism);

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
