#pragma once

#include <cmath>

namespace opmac {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double wrap_coord(double v, double side) {
    v = std::fmod(v, side);
    return v < 0.0 ? v + side : v;
}

/// Minimum-image displacement of one coordinate on a torus of the given side.
inline double toroidal_delta(double a, double b, double side) {
    double delta = std::fabs(a - b);
    return delta > 0.5 * side ? side - delta : delta;
}

/// Minimum-image (toroidal) distance between two points in a square window.
/// Bounded above by side/sqrt(2).
inline double toroidal_distance(const Vec2& a, const Vec2& b, double side) {
    const double dx = toroidal_delta(a.x, b.x, side);
    const double dy = toroidal_delta(a.y, b.y, side);
    return std::hypot(dx, dy);
}

inline double toroidal_distance_sq(const Vec2& a, const Vec2& b, double side) {
    const double dx = toroidal_delta(a.x, b.x, side);
    const double dy = toroidal_delta(a.y, b.y, side);
    return dx * dx + dy * dy;
}

} // namespace opmac
