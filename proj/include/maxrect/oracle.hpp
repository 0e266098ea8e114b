#pragma once

// Brute-force references: grid rasterization lower bounds and an
// independent containment check for reported rectangles.

#include <string>

#include "maxrect/geom.hpp"
#include "maxrect/polygon.hpp"

namespace maxrect {

struct OracleResult {
    RectSpec rect;
    double area_lower_bound = 0.0;
    double resolution = 0.0;
    int orientations_sampled = 0;
};

/// Largest union of free grid cells forming a rectangle in frame C_θ. A cell
/// is free when its four corners are interior and no edge meets it, so the
/// result lies in P. Throws std::invalid_argument when h <= 0 or no cell is
/// free.
OracleResult axis_aligned_best(const PolygonShape& p, double theta, double h);

/// Best of axis_aligned_best over M uniform orientations in [0, π/2).
OracleResult sweep_oracle(const PolygonShape& p, int m, double h);

struct Verdict {
    bool ok = true;
    std::string diagnostic;  ///< first violation, e.g. "right side exits P"
    explicit operator bool() const { return ok; }
};

/// Containment by 1000 samples per side, proper crossings of sides with
/// edges, and no polygon vertex (hole or outer) strictly inside.
Verdict verify(const PolygonShape& p, const RectSpec& r, int samples_per_side = 1000);

}  // namespace maxrect
