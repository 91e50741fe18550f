#pragma once

#include <cmath>
#include <numeric>
#include <span>

namespace opmac {

inline double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

inline double sample_std(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

/// Normal-approximation 95% confidence half-width of the sample mean.
inline double ci95_halfwidth(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    return 1.959963984540054 * sample_std(xs) / std::sqrt(static_cast<double>(xs.size()));
}

} // namespace opmac
