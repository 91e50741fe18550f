#pragma once

#include <algorithm>
#include <cmath>

#include "opmac/empty_ball.hpp"
#include "opmac/params.hpp"
#include "opmac/quadrature.hpp"

namespace opmac {

namespace detail {

/// J(R) = integral_R^inf theta*d^alpha * r / (r^alpha + theta*d^alpha) dr,
/// the exponent kernel of the out-of-ball interferer field. Closed form for
/// alpha = 4, adaptive quadrature otherwise (substitution t = R/r maps the
/// tail onto (0,1]).
inline double op_exclusion_integral(double R, double theta, double d, double alpha,
                                    bool force_numeric = false) {
    const double td = theta * std::pow(d, alpha);
    if (alpha == 4.0 && !force_numeric) {
        const double s = std::sqrt(td); // = d^2 sqrt(theta)
        return 0.5 * s * (1.5707963267948966 - std::atan(R * R / s));
    }
    const double Ra = std::pow(R, alpha);
    auto integrand = [&](double t) {
        return std::pow(t, alpha - 3.0) / (Ra + td * std::pow(t, alpha));
    };
    return td * R * R * integrate(integrand, 0.0, 1.0, 1e-10 / std::max(1.0, td * R * R));
}

} // namespace detail

/// Opportunistic probability: conditional success probability of the link
/// given TX-side measured interference I, under the empty-ball model. The
/// nearest interferer sits on the circle of radius R(I); the rest form a PPP
/// of intensity 2*lambda outside the ball; all of them transmit. When
/// `duplex_active`, the residual self-interference factor exp(-theta d^alpha beta)
/// multiplies in.
inline double opportunistic_probability(double I, const SystemParams& params,
                                        bool duplex_active) {
    const double R = empty_ball_radius(I, params);
    const double td = params.theta * std::pow(params.d, params.alpha);

    const double nearest = 1.0 / (1.0 + td * std::pow(R, -params.alpha));
    const double field =
        std::exp(-4.0 * 3.14159265358979323846 * params.lambda *
                 detail::op_exclusion_integral(R, params.theta, params.d, params.alpha));
    const double fd = duplex_active ? std::exp(-td * params.beta) : 1.0;

    return std::clamp(fd * nearest * field, 0.0, 1.0);
}

inline double opportunistic_probability(double I, const SystemParams& params) {
    return opportunistic_probability(I, params, params.duplex == Duplex::Full);
}

/// Per-node opportunity estimate: measured interference, the empty-ball radius
/// it implies, and the predicted OP.
struct OpportunityEstimate {
    double measured_interference = 0.0;
    double ball_radius = 0.0;
    double op = 0.0;
};

inline OpportunityEstimate estimate_opportunity(double I, const SystemParams& params,
                                                bool duplex_active) {
    return {I, empty_ball_radius(I, params),
            opportunistic_probability(I, params, duplex_active)};
}

/// Measured interference of exactly zero has no empty-ball root; substitute a
/// configurable floor (default well below typical residual self-interference).
inline double apply_interference_floor(double I, double floor = 1e-12) {
    return I > floor ? I : floor;
}

} // namespace opmac
