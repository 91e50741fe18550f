#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "opmac/empty_ball.hpp"
#include "opmac/params.hpp"

namespace opmac {

/// Piecewise arctangent surrogate used by the closed-form approximation:
/// a fitted rational below x = 10, the saturation value pi/2 above.
inline double arctan_approx(double x) {
    if (x <= 10.0) return (1.632 * x - 0.1037) / (x + 0.8967);
    return 1.5707963267948966;
}

/// Which fitted branch applies: SmallX when x = (R/d)^2 / sqrt(theta/2) <= 10
/// (boundary inclusive), LargeX otherwise. Note the regimes run opposite to
/// interference: large I means small R and hence small x.
enum class FitRegime { SmallX, LargeX };

inline const char* to_string(FitRegime r) {
    return r == FitRegime::SmallX ? "small_x" : "large_x";
}

struct QuadraticCoefficients {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    FitRegime regime = FitRegime::SmallX;
};

/// Fitted quadratic coefficients of the approximate optimality condition
/// C1 p^2 + C2 p + C3 = 0, alpha = 4 only. Verbatim printed values,
/// including the exp(-theta beta d^4) factors.
inline QuadraticCoefficients quadratic_coefficients(double I, const SystemParams& params) {
    if (params.alpha != 4.0)
        throw std::invalid_argument("quadratic_coefficients: requires alpha=4");
    const double R = empty_ball_radius(I, params);
    const double lam = params.lambda, th = params.theta, d = params.d;
    const double x = (R / d) * (R / d) / std::sqrt(th / 2.0);
    const double e = std::exp(-th * params.beta * d * d * d * d);

    QuadraticCoefficients out;
    if (x <= 10.0) {
        out.regime = FitRegime::SmallX;
        out.c1 = (10.4 * std::pow(lam, 0.66) + 1.15) * (3.5 * std::sqrt(th) + 1.1) *
                 (0.5 * d * d - 0.7) * (4.5e-4 * std::pow(I, -1.75) - 0.12) *
                 (-28.84 * e + 29.85);
        out.c2 = 3.8e-4 * std::pow(I, -1.75) * (1.11e3 * lam * lam + 3.0) *
                 (0.3 * std::sqrt(th) + 2.3) * (0.14 * std::pow(d, 2.5) + 6.0) *
                 (-0.129 * e + 1.129);
        out.c3 = -(std::pow(lam, 1.63) + 0.014) * (0.7 / th + 0.5) *
                 (10.0 * std::pow(d, -4.0) + 0.4) * (0.9 * std::pow(I, -1.763) + 49.0) *
                 (0.02 * e + 0.98);
    } else {
        out.regime = FitRegime::LargeX;
        out.c1 = (273.0 * std::pow(lam, 1.66) + 2.0) * (1.1 / th - 5.0) *
                 (2.5 * std::pow(d, -4.0) - 0.7) * (1.2e-5 * std::pow(I, -2.75) - 0.4) *
                 (7.96 * e - 6.958);
        out.c2 = 1e-4 * std::pow(I, -2.75) * (3.8e3 * std::pow(lam, 2.66) + 1.4) *
                 (2.7 / th + 3.5) * (34.0 * std::pow(d, -4.0) + 3.0) *
                 (0.5261 * e + 1.526);
        out.c3 = -(0.9 * std::pow(lam, 1.63) + 0.013) * (0.7 / th + 0.5) *
                 (17.0 * std::pow(d, -4.0) + 0.7) * (0.5 * std::pow(I, -1.763) + 30.0) *
                 (-0.046 * e + 1.051);
    }
    return out;
}

/// Closed-form approximate optimal transmission probability, alpha = 4 only:
/// the positive root (-C2 + sqrt(C2^2 - 4 C1 C3)) / (2 C1), clamped by
/// min[p*, 1]. A negative discriminant is reported as an error, never clamped
/// over: the fit has no real solution at those parameters.
inline double closed_form_p(double I, const SystemParams& params) {
    const QuadraticCoefficients c = quadratic_coefficients(I, params);
    const double disc = c.c2 * c.c2 - 4.0 * c.c1 * c.c3;
    if (disc < 0.0)
        throw std::domain_error("closed_form_p: negative discriminant; parameters are "
                                "outside the fitted validity region");
    const double root = (-c.c2 + std::sqrt(disc)) / (2.0 * c.c1);
    if (!(root > 0.0))
        throw std::domain_error("closed_form_p: fitted quadratic has no positive root");
    return std::min(1.0, root);
}

} // namespace opmac
