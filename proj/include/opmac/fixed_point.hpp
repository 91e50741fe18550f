#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "opmac/empty_ball.hpp"
#include "opmac/params.hpp"
#include "opmac/quadrature.hpp"

namespace opmac {

/// The proportional-fairness stationarity condition is 1/p = RHS(p). Three
/// interchangeable right-hand sides are provided:
///  - NumericIntegral: the far-field term evaluated by adaptive quadrature,
///    valid for any alpha > 2 and for p in (0,1]. Default.
///  - PaperEq6: the printed alpha=4 reduction, verbatim (arctan form).
///  - DerivedArccot: the analytic alpha=4 reduction of the integral,
///    (pi/2 - arctan(...)). Agrees with NumericIntegral to quadrature accuracy;
///    differs from PaperEq6, whose third term diverges as p -> 1.
enum class RhsVariant { NumericIntegral, PaperEq6, DerivedArccot };

inline const char* to_string(RhsVariant v) {
    switch (v) {
        case RhsVariant::NumericIntegral: return "numeric_integral";
        case RhsVariant::PaperEq6: return "paper_eq6";
        default: return "derived_arccot";
    }
}

namespace detail {

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Far-field term 4*pi*lambda*d^2 * integral_{R/d}^inf s/(1-p+s^alpha/theta) ds
/// by quadrature on the substitution t = (R/d)/s.
inline double far_field_numeric(double p, double R, const SystemParams& prm) {
    const double pref = 4.0 * pi * prm.lambda * prm.d * prm.d;
    if (pref == 0.0) return 0.0;
    const double s0 = R / prm.d;
    const double s0a = std::pow(s0, prm.alpha);
    const double q = 1.0 - p;
    auto integrand = [&](double t) {
        return std::pow(t, prm.alpha - 3.0) /
               (q * std::pow(t, prm.alpha) + s0a / prm.theta);
    };
    const double scale = pref * s0 * s0;
    return scale * integrate(integrand, 0.0, 1.0, 1e-10 / std::max(1.0, scale));
}

} // namespace detail

/// Right-hand side of the fixed-point equation for transmission probability p,
/// given the empty-ball radius R. Requires p in (0,1) for the closed-form
/// variants (their 1/sqrt(1-p) split is singular at 1); NumericIntegral also
/// accepts p = 1.
inline double fixed_point_rhs(double p, double R, const SystemParams& params,
                              RhsVariant variant = RhsVariant::NumericIntegral) {
    if (!(R > 0.0)) throw std::domain_error("fixed_point_rhs: R must be positive");
    if (!(p > 0.0) || p > 1.0)
        throw std::domain_error("fixed_point_rhs: p must lie in (0,1]");
    if (variant != RhsVariant::NumericIntegral) {
        if (params.alpha != 4.0)
            throw std::invalid_argument(std::string("fixed_point_rhs: variant ") +
                                        to_string(variant) + " requires alpha=4");
        if (p == 1.0)
            throw std::domain_error(
                "fixed_point_rhs: p=1 is singular for the closed-form variants; "
                "use NumericIntegral for the limit");
    }

    const double da = std::pow(params.d, params.alpha);
    const double em1 = std::expm1(-params.theta * da * params.beta); // E - 1
    const double self_term = -em1 / (em1 * p + 1.0);
    const double ball_term = 1.0 / (1.0 + std::pow(R, params.alpha) / (params.theta * da) - p);

    double far = 0.0;
    switch (variant) {
        case RhsVariant::NumericIntegral:
            far = detail::far_field_numeric(p, R, params);
            break;
        case RhsVariant::PaperEq6:
        case RhsVariant::DerivedArccot: {
            const double rootq = std::sqrt(1.0 - p);
            const double pref =
                2.0 * detail::pi * params.lambda * params.d * params.d *
                std::sqrt(params.theta) / rootq;
            const double arg =
                (R / params.d) * (R / params.d) / std::sqrt(params.theta * (1.0 - p));
            const double at = std::atan(arg);
            far = pref * (variant == RhsVariant::PaperEq6 ? at : 0.5 * detail::pi - at);
            break;
        }
    }
    return self_term + ball_term + far;
}

/// Result of solving the fixed-point equation. `clamped` marks the case where
/// the unclamped stationary point exceeds 1 and the optimum is the boundary
/// min[p*,1] = 1; `residual` is |RHS(p*) - 1/p*| (for clamped results, the gap
/// at the probe point just inside 1).
struct SolverResult {
    double p_star = 1.0;
    double residual = 0.0;
    bool clamped = false;
    RhsVariant variant = RhsVariant::NumericIntegral;
};

/// Optimal transmission probability for a known empty-ball radius: the unique
/// root of g(p) = RHS(p) - 1/p, found by bisection (g is strictly increasing,
/// so the bracket is guaranteed). Returns p*=1 with clamped=true when g stays
/// negative up to the boundary.
inline SolverResult solve_optimal_p_for_radius(double R, const SystemParams& params,
                                               RhsVariant variant = RhsVariant::NumericIntegral,
                                               double tol = 1e-9) {
    auto g = [&](double p) { return fixed_point_rhs(p, R, params, variant) - 1.0 / p; };

    // Probe just inside the boundary; the closed-form variants are singular at 1.
    const double hi0 = 1.0 - 1e-9;
    if (g(hi0) < 0.0) {
        return {1.0, std::fabs(g(hi0)), true, variant};
    }

    double lo = 1e-12, hi = hi0;
    double mid = 0.5 * (lo + hi), gm = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        gm = g(mid);
        if (std::fabs(gm) <= tol)
            return {mid, std::fabs(gm), false, variant};
        (gm < 0.0 ? lo : hi) = mid;
    }
    throw std::runtime_error("solve_optimal_p: tolerance " + std::to_string(tol) +
                             " not reached in 200 bisection steps");
}

/// Optimal transmission probability for measured interference I.
inline SolverResult solve_optimal_p(double I, const SystemParams& params,
                                    RhsVariant variant = RhsVariant::NumericIntegral,
                                    double tol = 1e-9) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve_optimal_p: tol must be positive");
    return solve_optimal_p_for_radius(empty_ball_radius(I, params), params, variant, tol);
}

} // namespace opmac
