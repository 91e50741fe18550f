#pragma once

#include <cmath>
#include <stdexcept>

#include "opmac/params.hpp"

namespace opmac {

namespace detail {

/// Residual of the empty-ball condition I*R^alpha - 4*pi*lambda/(alpha-2)*R^2 - 1
/// evaluated in extended precision. The two leading terms cancel almost exactly
/// near the root at extreme parameters, so double evaluation would drown the
/// residual in rounding noise.
inline long double empty_ball_residual_ld(long double I, long double R,
                                          long double lambda, long double alpha) {
    constexpr long double pi = 3.14159265358979323846264338327950288L;
    const long double c = 4.0L * pi * lambda / (alpha - 2.0L);
    return I * powl(R, alpha) - c * R * R - 1.0L;
}

inline long double empty_ball_radius_ld(long double I, long double lambda,
                                        long double alpha) {
    constexpr long double pi = 3.14159265358979323846264338327950288L;
    if (alpha == 4.0L) {
        // Printed closed form: R = I^{-1/2} [ pi*lambda + (I + pi^2 lambda^2)^{1/2} ]^{1/2}
        return sqrtl((pi * lambda + sqrtl(I + pi * pi * lambda * lambda)) / I);
    }
    const long double c = 4.0L * pi * lambda / (alpha - 2.0L);
    if (c == 0.0L) return powl(I, -1.0L / alpha);

    // f(R) = I R^alpha - c R^2 - 1 is negative at the stationary point and
    // increases beyond it; the unique positive root lies to its right.
    long double lo = powl(2.0L * c / (alpha * I), 1.0L / (alpha - 2.0L));
    long double hi = lo;
    while (empty_ball_residual_ld(I, hi, lambda, alpha) < 0.0L) hi *= 2.0L;
    if (hi > lo) lo = hi / 2.0L;

    long double r = hi;
    for (int iter = 0; iter < 200; ++iter) {
        const long double f = empty_ball_residual_ld(I, r, lambda, alpha);
        const long double df = alpha * I * powl(r, alpha - 1.0L) - 2.0L * c * r;
        long double next = r - f / df;
        if (!(next > lo && next < hi)) next = 0.5L * (lo + hi); // bisection fallback
        if (f > 0.0L) hi = r; else lo = r;
        if (fabsl(next - r) <= 1e-18L * r) { r = next; break; }
        r = next;
    }
    return r;
}

} // namespace detail

/// Expected empty-ball radius for measured interference I: the unique positive
/// root of I*R^alpha - 4*pi*lambda/(alpha-2)*R^2 - 1 = 0. Uses the printed
/// closed form when alpha = 4 and a safeguarded Newton iteration otherwise.
inline double empty_ball_radius(double I, const SystemParams& params) {
    if (!(I > 0.0))
        throw std::domain_error(
            "empty_ball_radius: interference must be positive (apply the measurement "
            "floor before calling)");
    return static_cast<double>(detail::empty_ball_radius_ld(I, params.lambda, params.alpha));
}

/// Residual of the defining equation for a candidate radius, in double.
inline double empty_ball_residual(double I, double R, const SystemParams& params) {
    return static_cast<double>(detail::empty_ball_residual_ld(I, R, params.lambda, params.alpha));
}

} // namespace opmac
