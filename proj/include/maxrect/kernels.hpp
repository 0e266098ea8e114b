#pragma once

// Data-parallel inner loops over polygon edges. Each kernel has a scalar
// reference implementation and an AVX2 variant; the active table is chosen
// once at startup from CPUID (override with MAXRECT_FORCE_SCALAR=1).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace maxrect::kernels {

/// Edges in structure-of-arrays layout: edge i runs (x0[i],y0[i]) -> (x1[i],y1[i]).
struct EdgeSoA {
    std::vector<double> x0, y0, x1, y1;

    std::size_t size() const { return x0.size(); }
    void reserve(std::size_t n);
    void push(double ax, double ay, double bx, double by);
};

struct RayHit {
    double t = 0.0;        ///< ray parameter of the hit, +inf when nothing was crossed
    long edge = -1;        ///< index of the crossed edge
};

/// Axis-aligned box in a rotated frame: center (cx, cy), frame angle via (c, s),
/// half extents hw (along the frame x-axis) and hh.
struct OrientedBox {
    double cx = 0.0, cy = 0.0;
    double c = 1.0, s = 0.0;
    double hw = 0.0, hh = 0.0;
};

struct KernelTable {
    std::string_view name;

    /// out = (x cos + y sin, -x sin + y cos) elementwise.
    void (*transform)(double c, double s, std::span<const double> x, std::span<const double> y,
                      std::span<double> ox, std::span<double> oy);

    /// First edge crossed properly (endpoints strictly on opposite sides of the
    /// ray's line) at parameter t > tmin along origin + t * dir.
    RayHit (*ray_first_hit)(double ox, double oy, double dx, double dy, const EdgeSoA& e,
                            double tmin);

    /// True when some edge meets the closed box.
    bool (*any_edge_meets_box)(const EdgeSoA& e, const OrientedBox& box);

    /// Number of edges crossed by the rightward horizontal ray from (px, py),
    /// half-open rule in y.
    std::size_t (*crossings_right)(double px, double py, const EdgeSoA& e);

    /// x-coordinates where edges cross the horizontal line y (half-open rule),
    /// appended to `out` in edge order.
    void (*scanline)(double y, const EdgeSoA& e, std::vector<double>& out);
};

const KernelTable& scalar_table();
/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table();
/// The table selected for this process.
const KernelTable& active();

}  // namespace maxrect::kernels
