#include "maxrect/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace maxrect::kernels {

void EdgeSoA::reserve(std::size_t n) {
    x0.reserve(n);
    y0.reserve(n);
    x1.reserve(n);
    y1.reserve(n);
}

void EdgeSoA::push(double ax, double ay, double bx, double by) {
    x0.push_back(ax);
    y0.push_back(ay);
    x1.push_back(bx);
    y1.push_back(by);
}

namespace {

void transform_scalar(double c, double s, std::span<const double> x, std::span<const double> y,
                      std::span<double> ox, std::span<double> oy) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        ox[i] = x[i] * c + y[i] * s;
        oy[i] = -x[i] * s + y[i] * c;
    }
}

RayHit ray_first_hit_scalar(double ox, double oy, double dx, double dy, const EdgeSoA& e,
                            double tmin) {
    RayHit best{std::numeric_limits<double>::infinity(), -1};
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double ax = e.x0[i] - ox, ay = e.y0[i] - oy;
        const double bx = e.x1[i] - ox, by = e.y1[i] - oy;
        const double sa = dx * ay - dy * ax;
        const double sb = dx * by - dy * bx;
        if (!((sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0))) continue;
        const double ex = bx - ax, ey = by - ay;
        const double den = dx * ey - dy * ex;
        const double t = (ax * ey - ay * ex) / den;
        if (t > tmin && t < best.t) {
            best.t = t;
            best.edge = static_cast<long>(i);
        }
    }
    return best;
}

bool meets_box_scalar(const EdgeSoA& e, const OrientedBox& b) {
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double px = e.x0[i] - b.cx, py = e.y0[i] - b.cy;
        const double qx = e.x1[i] - b.cx, qy = e.y1[i] - b.cy;
        const double lx0 = px * b.c + py * b.s, ly0 = -px * b.s + py * b.c;
        const double lx1 = qx * b.c + qy * b.s, ly1 = -qx * b.s + qy * b.c;
        const double dx = lx1 - lx0, dy = ly1 - ly0;
        double lo = 0.0, hi = 1.0;
        if (dx == 0.0) {
            if (lx0 < -b.hw || lx0 > b.hw) continue;
        } else {
            const double ta = (-b.hw - lx0) / dx, tb = (b.hw - lx0) / dx;
            lo = std::max(lo, std::min(ta, tb));
            hi = std::min(hi, std::max(ta, tb));
        }
        if (dy == 0.0) {
            if (ly0 < -b.hh || ly0 > b.hh) continue;
        } else {
            const double ta = (-b.hh - ly0) / dy, tb = (b.hh - ly0) / dy;
            lo = std::max(lo, std::min(ta, tb));
            hi = std::min(hi, std::max(ta, tb));
        }
        if (lo <= hi) return true;
    }
    return false;
}

std::size_t crossings_right_scalar(double px, double py, const EdgeSoA& e) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double y0 = e.y0[i], y1 = e.y1[i];
        if ((y0 > py) == (y1 > py)) continue;
        const double x = e.x0[i] + (py - y0) * (e.x1[i] - e.x0[i]) / (y1 - y0);
        if (x > px) ++count;
    }
    return count;
}

void scanline_scalar(double y, const EdgeSoA& e, std::vector<double>& out) {
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double y0 = e.y0[i], y1 = e.y1[i];
        if ((y0 > y) == (y1 > y)) continue;
        out.push_back(e.x0[i] + (y - y0) * (e.x1[i] - e.x0[i]) / (y1 - y0));
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar", transform_scalar, ray_first_hit_scalar,
                                   meets_box_scalar, crossings_right_scalar, scanline_scalar};
    return table;
}

#ifndef MAXRECT_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

const KernelTable& active() {
    static const KernelTable* chosen = [] {
        const char* force = std::getenv("MAXRECT_FORCE_SCALAR");
        if (force != nullptr && force[0] == '1') return &scalar_table();
#if defined(MAXRECT_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
        __builtin_cpu_init();
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
            if (const KernelTable* t = avx2_table()) return t;
        }
#endif
        return &scalar_table();
    }();
    return *chosen;
}

}  // namespace maxrect::kernels
