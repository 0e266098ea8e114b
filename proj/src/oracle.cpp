#include "maxrect/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace maxrect {

namespace {

// Largest all-ones rectangle of a row-major grid via histogram scans.
struct GridBest {
    long area = 0;
    int c0 = 0, c1 = 0, r0 = 0, r1 = 0;  // half-open cell ranges
};

GridBest largest_block(const std::vector<char>& free, int cols, int rows) {
    GridBest best;
    std::vector<int> height(cols, 0), stack;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) height[c] = free[static_cast<std::size_t>(r) * cols + c] ? height[c] + 1 : 0;
        stack.clear();
        for (int c = 0; c <= cols; ++c) {
            const int h = c < cols ? height[c] : 0;
            while (!stack.empty() && height[stack.back()] >= h) {
                const int top = stack.back();
                stack.pop_back();
                const int left = stack.empty() ? 0 : stack.back() + 1;
                const long a = static_cast<long>(height[top]) * (c - left);
                if (a > best.area) best = {a, left, c, r + 1 - height[top], r + 1};
            }
            stack.push_back(c);
        }
    }
    return best;
}

}  // namespace

OracleResult axis_aligned_best(const PolygonShape& p, double theta, double h) {
    if (!(h > 0)) throw std::invalid_argument("axis_aligned_best: resolution must be positive");
    const Frame fr(theta);
    std::vector<Point2> v;
    v.reserve(p.vertex_count());
    for (const Point2& q : p.points()) v.push_back(fr.to_frame(q));
    double x0 = v[0].x, y0 = v[0].y, x1 = x0, y1 = y0;
    for (const Point2& q : v) {
        x0 = std::min(x0, q.x);
        x1 = std::max(x1, q.x);
        y0 = std::min(y0, q.y);
        y1 = std::max(y1, q.y);
    }
    const int cols = std::max(1, static_cast<int>(std::ceil((x1 - x0) / h)));
    const int rows = std::max(1, static_cast<int>(std::ceil((y1 - y0) / h)));
    const int n = p.vertex_count();

    // Interior flags of grid corners, one scanline per grid row.
    std::vector<char> inside(static_cast<std::size_t>(cols + 1) * (rows + 1), 0);
    std::vector<double> xs;
    for (int r = 0; r <= rows; ++r) {
        const double y = y0 + r * h;
        xs.clear();
        for (int i = 0; i < n; ++i) {
            const Point2 a = v[i], b = v[p.next(i)];
            if ((a.y > y) == (b.y > y)) continue;
            xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
        }
        std::sort(xs.begin(), xs.end());
        std::size_t k = 0;
        for (int c = 0; c <= cols; ++c) {
            const double x = x0 + c * h;
            while (k < xs.size() && xs[k] <= x) ++k;
            inside[static_cast<std::size_t>(r) * (cols + 1) + c] = (k % 2) == 1;
        }
    }
    std::vector<char> free(static_cast<std::size_t>(cols) * rows, 0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            auto in = [&](int rr, int cc) { return inside[static_cast<std::size_t>(rr) * (cols + 1) + cc]; };
            free[static_cast<std::size_t>(r) * cols + c] = in(r, c) && in(r, c + 1) && in(r + 1, c) && in(r + 1, c + 1);
        }
    // Block every cell an edge passes through (conservatively, by column strips).
    auto block = [&](int c, int r) {
        if (c >= 0 && c < cols && r >= 0 && r < rows) free[static_cast<std::size_t>(r) * cols + c] = 0;
    };
    for (int i = 0; i < n; ++i) {
        Point2 a = v[i], b = v[p.next(i)];
        if (a.x > b.x) std::swap(a, b);
        const int ca = static_cast<int>(std::floor((a.x - x0) / h)), cb = static_cast<int>(std::floor((b.x - x0) / h));
        for (int c = std::max(ca, 0) - 1; c <= std::min(cb, cols - 1) + 1; ++c) {
            const double sx0 = std::max(a.x, x0 + c * h), sx1 = std::min(b.x, x0 + (c + 1) * h);
            double ya, yb;
            if (b.x - a.x <= 0.0) {
                ya = a.y;
                yb = b.y;
            } else {
                if (sx0 > sx1) continue;
                ya = a.y + (sx0 - a.x) * (b.y - a.y) / (b.x - a.x);
                yb = a.y + (sx1 - a.x) * (b.y - a.y) / (b.x - a.x);
            }
            if (ya > yb) std::swap(ya, yb);
            const int ra = static_cast<int>(std::floor((ya - y0) / h)) - 1, rb = static_cast<int>(std::floor((yb - y0) / h)) + 1;
            for (int r = ra; r <= rb; ++r)
                for (int dc = -1; dc <= 1; ++dc) {
                    // Only cells whose closed square meets the segment piece.
                    const double cx0 = x0 + (c + dc) * h, cy0 = y0 + r * h;
                    if (sx1 < cx0 - 1e-12 || sx0 > cx0 + h + 1e-12) continue;
                    if (yb < cy0 - 1e-12 || ya > cy0 + h + 1e-12) continue;
                    block(c + dc, r);
                }
        }
    }
    const GridBest g = largest_block(free, cols, rows);
    if (g.area == 0) throw std::invalid_argument("axis_aligned_best: no interior cell at this resolution");
    OracleResult res;
    res.rect = rect_from_frame_box(fr, x0 + g.c0 * h, x0 + g.c1 * h, y0 + g.r0 * h, y0 + g.r1 * h);
    res.area_lower_bound = res.rect.area();
    res.resolution = h;
    res.orientations_sampled = 1;
    return res;
}

OracleResult sweep_oracle(const PolygonShape& p, int m, double h) {
    OracleResult best;
    best.resolution = h;
    for (int k = 0; k < m; ++k) {
        try {
            const OracleResult r = axis_aligned_best(p, kHalfPi * k / m, h);
            if (r.area_lower_bound > best.area_lower_bound) best = r;
        } catch (const std::invalid_argument&) {
        }
    }
    best.orientations_sampled = m;
    return best;
}

Verdict verify(const PolygonShape& p, const RectSpec& r, int samples_per_side) {
    static const char* names[4] = {"bottom", "right", "top", "left"};
    const double tol = p.eps();
    const auto c = rect_corners(r);
    // Report the side with the most samples outside.
    int worst = -1, worst_out = 0;
    for (int s = 0; s < 4; ++s) {
        int out = 0;
        for (int k = 0; k <= samples_per_side; ++k)
            out += !p.contains_point(lerp(c[s], c[(s + 1) % 4], static_cast<double>(k) / samples_per_side), tol);
        if (out > worst_out) {
            worst = s;
            worst_out = out;
        }
    }
    if (worst >= 0) return {false, std::string(names[worst]) + " side exits P"};
    for (int s = 0; s < 4; ++s) {
        const Point2 a = c[s], b = c[(s + 1) % 4];
        for (int e = 0; e < p.edge_count(); ++e) {
            const Segment2 g = p.edge(e);
            if (orient(a, b, g.a) * orient(a, b, g.b) >= 0 || orient(g.a, g.b, a) * orient(g.a, g.b, b) >= 0) continue;
            Point2 x;
            if (!line_intersection(a, b, g.a, g.b, x)) continue;
            if (dist(x, a) <= tol || dist(x, b) <= tol || dist(x, g.a) <= tol || dist(x, g.b) <= tol) continue;
            if (point_segment_distance(g.a, a, b) <= tol || point_segment_distance(g.b, a, b) <= tol) continue;
            // A side flush with the edge up to tolerance crosses it at a grazing angle.
            if (point_segment_distance(a, g.a, g.b) <= tol || point_segment_distance(b, g.a, g.b) <= tol) continue;
            return {false, std::string(names[s]) + " side crosses edge " + std::to_string(e)};
        }
    }
    const Frame fr(r.theta);
    const Point2 ctr = fr.to_frame(r.center);
    const double hw = 0.5 * r.width - tol, hh = 0.5 * r.height - tol;
    for (int v = 0; v < p.vertex_count(); ++v) {
        const Point2 q = fr.to_frame(p.vertex(v)) - ctr;
        if (std::fabs(q.x) < hw && std::fabs(q.y) < hh) {
            const int ring = p.ring_of(v);
            if (ring > 0) return {false, "hole " + std::to_string(ring - 1) + " intersects interior"};
            return {false, "vertex " + std::to_string(v) + " lies inside"};
        }
    }
    return {};
}

}  // namespace maxrect
