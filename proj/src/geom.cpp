#include "maxrect/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace maxrect {

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    return t;
}

Frame::Frame(double theta)
    : theta_(normalize_angle(theta)), cos_(std::cos(theta)), sin_(std::sin(theta)) {}

Point2 rotate_frame(Point2 p, const Frame& f) { return f.to_frame(p); }

bool RectSpec::valid() const {
    return std::isfinite(center.x) && std::isfinite(center.y) && std::isfinite(theta) &&
           width > 0.0 && height > 0.0 && std::isfinite(width) && std::isfinite(height);
}

std::array<Point2, 4> rect_corners(const RectSpec& r) {
    const Frame f(r.theta);
    const Point2 ux = f.x_axis() * (0.5 * r.width);
    const Point2 uy = f.y_axis() * (0.5 * r.height);
    return {r.center - ux - uy, r.center + ux - uy, r.center + ux + uy, r.center - ux + uy};
}

RectSpec rect_from_frame_box(const Frame& frame, double xl, double xr, double yb, double yt) {
    RectSpec r;
    r.center = frame.to_world({0.5 * (xl + xr), 0.5 * (yb + yt)});
    r.theta = frame.theta();
    r.width = xr - xl;
    r.height = yt - yb;
    return r;
}

RectSpec canonical_rect(const RectSpec& r) {
    RectSpec out = r;
    double t = normalize_angle(r.theta);
    int quarter = static_cast<int>(std::floor(t / kHalfPi));
    t -= quarter * kHalfPi;
    if (t >= kHalfPi - 1e-15) {
        t = 0.0;
        ++quarter;
    }
    if (quarter % 2 != 0) std::swap(out.width, out.height);
    out.theta = std::max(0.0, t);
    return out;
}

// ---------------------------------------------------------------------------
// Exact orientation: error-bounded floating filter, then an exact evaluation
// with nonoverlapping floating-point expansions.

namespace {

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    const double bv = x - a;
    const double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
    x = a - b;
    const double bv = a - x;
    const double av = x + bv;
    y = (a - av) + (bv - b);
}

inline void two_product(double a, double b, double& x, double& y) {
    x = a * b;
    y = std::fma(a, b, -x);
}

// Adds a scalar to an expansion (increasing magnitude, nonoverlapping).
int grow_expansion(int elen, const double* e, double b, double* h) {
    double q = b;
    int hindex = 0;
    for (int i = 0; i < elen; ++i) {
        double hh;
        two_sum(q, e[i], q, hh);
        if (hh != 0.0) h[hindex++] = hh;
    }
    if (q != 0.0 || hindex == 0) h[hindex++] = q;
    return hindex;
}

int orient_exact(Point2 p, Point2 q, Point2 r) {
    double ax1, ax0, ay1, ay0, bx1, bx0, by1, by0;
    two_diff(q.x, p.x, ax1, ax0);
    two_diff(q.y, p.y, ay1, ay0);
    two_diff(r.x, p.x, bx1, bx0);
    two_diff(r.y, p.y, by1, by0);

    // det = ax*by - ay*bx with ax = ax1+ax0, ...
    const double a_terms[2] = {ax1, ax0};
    const double by_terms[2] = {by1, by0};
    const double ay_terms[2] = {ay1, ay0};
    const double bx_terms[2] = {bx1, bx0};

    double expansion[40];
    double scratch[40];
    int len = 0;
    auto add = [&](double v) {
        if (v == 0.0) return;
        len = grow_expansion(len, expansion, v, scratch);
        std::copy(scratch, scratch + len, expansion);
    };
    for (double a : a_terms)
        for (double b : by_terms) {
            double hi, lo;
            two_product(a, b, hi, lo);
            add(hi);
            add(lo);
        }
    for (double a : ay_terms)
        for (double b : bx_terms) {
            double hi, lo;
            two_product(a, b, hi, lo);
            add(-hi);
            add(-lo);
        }
    for (int i = len - 1; i >= 0; --i) {
        if (expansion[i] > 0.0) return 1;
        if (expansion[i] < 0.0) return -1;
    }
    return 0;
}

}  // namespace

int orient(Point2 p, Point2 q, Point2 r) {
    const double detleft = (q.x - p.x) * (r.y - p.y);
    const double detright = (q.y - p.y) * (r.x - p.x);
    const double det = detleft - detright;
    constexpr double eps = std::numeric_limits<double>::epsilon() * 0.5;
    constexpr double errbound = (3.0 + 16.0 * eps) * eps;
    const double detsum = std::fabs(detleft) + std::fabs(detright);
    if (std::fabs(det) > errbound * detsum) return det > 0.0 ? 1 : -1;
    return orient_exact(p, q, r);
}

namespace {
bool on_segment_collinear(Point2 a, Point2 b, Point2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}
}  // namespace

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
        if (o1 != 0 || o2 != 0) return true;
    }
    if (o1 == 0 && on_segment_collinear(a, b, c)) return true;
    if (o2 == 0 && on_segment_collinear(a, b, d)) return true;
    if (o3 == 0 && on_segment_collinear(c, d, a)) return true;
    if (o4 == 0 && on_segment_collinear(c, d, b)) return true;
    return false;
}

bool segments_cross_properly(Point2 a, Point2 b, Point2 c, Point2 d) {
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

bool line_intersection(Point2 a, Point2 b, Point2 c, Point2 d, Point2& out) {
    const Point2 r = b - a;
    const Point2 s = d - c;
    const double den = cross(r, s);
    if (den == 0.0) return false;
    const double t = cross(c - a, s) / den;
    out = a + r * t;
    return true;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return dist(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + ab * t);
}

int thales_segment_params(Point2 p, Point2 q, Point2 a, Point2 b, double out[2]) {
    const Point2 m = midpoint(p, q);
    const double r2 = 0.25 * dot(q - p, q - p);
    const Point2 d = b - a;
    const Point2 f = a - m;
    const double A = dot(d, d);
    if (A == 0.0) return 0;
    const double B = 2.0 * dot(f, d);
    const double C = dot(f, f) - r2;
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return 0;
    const double sq = std::sqrt(disc);
    // Stable pair of roots.
    const double qv = -0.5 * (B + std::copysign(sq, B));
    double s0 = qv / A;
    double s1 = qv != 0.0 ? C / qv : s0;
    if (s0 > s1) std::swap(s0, s1);
    int k = 0;
    if (s0 >= 0.0 && s0 <= 1.0) out[k++] = s0;
    if (disc > 0.0 && s1 >= 0.0 && s1 <= 1.0) out[k++] = s1;
    return k;
}

}  // namespace maxrect
