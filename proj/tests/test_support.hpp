#pragma once

// Random polygon generators shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "maxrect/polygon.hpp"

namespace maxrect::testing {

/// Star-shaped polygon around the origin: sorted random angles, random radii.
/// Always simple and counterclockwise.
inline PolygonShape random_star_polygon(std::mt19937_64& rng, int n, double rmin = 0.3,
                                        double rmax = 1.0) {
    std::uniform_real_distribution<double> ang(0.0, kTwoPi), rad(rmin, rmax);
    std::vector<double> a(n);
    for (auto& x : a) x = ang(rng);
    std::sort(a.begin(), a.end());
    std::vector<Point2> ring;
    ring.reserve(n);
    for (double t : a) {
        const double r = rad(rng);
        ring.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return PolygonShape(std::move(ring));
}

/// Convex polygon: random points on an ellipse in angular order.
inline PolygonShape random_convex_polygon(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> ang(0.0, kTwoPi), ax(0.5, 1.5);
    const double a = ax(rng), b = ax(rng);
    std::vector<double> t(n);
    for (auto& x : t) x = ang(rng);
    std::sort(t.begin(), t.end());
    std::vector<Point2> ring;
    for (double x : t) ring.push_back({a * std::cos(x), b * std::sin(x)});
    return PolygonShape(std::move(ring));
}

/// Rectilinear-ish "skyline" polygon: a bottom edge and a random staircase
/// top, jittered so no two vertices align exactly.
inline PolygonShape random_skyline(std::mt19937_64& rng, int columns) {
    std::uniform_real_distribution<double> h(0.5, 3.0), jit(-0.05, 0.05);
    std::vector<Point2> ring{{0.0, 0.0}, {static_cast<double>(columns), jit(rng)}};
    for (int c = columns; c > 0; --c) {
        const double y = h(rng);
        ring.push_back({c + jit(rng) * 0.5, y + jit(rng)});
        ring.push_back({c - 1 + jit(rng) * 0.5, y + jit(rng)});
    }
    ring.back().x = std::max(ring.back().x, 0.01);
    ring.front().x = 0.0;
    return PolygonShape(std::move(ring));
}

}  // namespace maxrect::testing
