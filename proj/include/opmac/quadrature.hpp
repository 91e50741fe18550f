#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

namespace opmac {

namespace detail {

// Gauss-Kronrod 15(7) abscissae and weights on [-1,1].
inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss-7 weights for the embedded rule (odd-index Kronrod nodes).
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
std::pair<double, double> gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kronrod_x[i];
        const double sum = f(center - dx) + f(center + dx);
        kron += kronrod_w[i] * sum;
        if (i % 2 == 1) gauss += gauss_w[i / 2] * sum;
    }
    const double fc = f(center);
    kron += kronrod_w[7] * fc;
    gauss += gauss_w[3] * fc;
    return {kron * half, std::fabs(kron - gauss) * half};
}

} // namespace detail

/// Adaptive Gauss-Kronrod 15(7) on a finite interval with an absolute error
/// target. The local tolerance halves on each bisection so the accumulated
/// error estimate stays below `abs_tol`.
template <typename F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10,
                 int max_depth = 52) {
    struct Segment {
        double a, b, tol;
        int depth;
    };
    double total = 0.0;
    // Explicit stack; worst-case depth is bounded by max_depth.
    std::array<Segment, 256> stack;
    std::size_t top = 0;
    stack[top++] = {a, b, abs_tol, 0};
    while (top > 0) {
        const Segment seg = stack[--top];
        auto [value, err] = detail::gk15(f, seg.a, seg.b);
        if (err <= seg.tol || seg.depth >= max_depth || top + 2 >= stack.size()) {
            total += value;
            continue;
        }
        const double mid = 0.5 * (seg.a + seg.b);
        stack[top++] = {seg.a, mid, 0.5 * seg.tol, seg.depth + 1};
        stack[top++] = {mid, seg.b, 0.5 * seg.tol, seg.depth + 1};
    }
    return total;
}

} // namespace opmac
