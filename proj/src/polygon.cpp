#include "maxrect/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace maxrect {

namespace {

// Crossing parity of a single ring; the point is assumed off the ring.
bool ring_parity(const std::vector<Point2>& ring, Point2 q) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2 a = ring[j], b = ring[i];
        if ((a.y > q.y) == (b.y > q.y)) continue;
        const double x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (x > q.x) inside = !inside;
    }
    return inside;
}

bool on_ring(const std::vector<Point2>& ring, Point2 q) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = ring[i], b = ring[(i + 1) % n];
        if (orient(a, b, q) == 0 && std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
            std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y))
            return true;
    }
    return false;
}

bool ring_strictly_contains(const std::vector<Point2>& ring, Point2 q) {
    return !on_ring(ring, q) && ring_parity(ring, q);
}

bool rings_touch(const std::vector<Point2>& r1, const std::vector<Point2>& r2) {
    for (std::size_t i = 0; i < r1.size(); ++i)
        for (std::size_t j = 0; j < r2.size(); ++j)
            if (segments_intersect(r1[i], r1[(i + 1) % r1.size()], r2[j], r2[(j + 1) % r2.size()]))
                return true;
    return false;
}

kernels::OrientedBox box_of(const RectSpec& r, double shrink) {
    const Frame f(r.theta);
    kernels::OrientedBox b;
    b.cx = r.center.x;
    b.cy = r.center.y;
    b.c = f.x_axis().x;
    b.s = f.x_axis().y;
    b.hw = std::max(0.0, 0.5 * r.width - shrink);
    b.hh = std::max(0.0, 0.5 * r.height - shrink);
    return b;
}

RectSpec shrunk(const RectSpec& r, double tol) {
    RectSpec s = r;
    s.width = std::max(0.0, r.width - 2.0 * tol);
    s.height = std::max(0.0, r.height - 2.0 * tol);
    return s;
}

}  // namespace

PolygonShape::PolygonShape(std::vector<Point2> outer, std::vector<std::vector<Point2>> holes) {
    rings_.reserve(holes.size() + 1);
    rings_.push_back(std::move(outer));
    for (auto& h : holes) rings_.push_back(std::move(h));

    std::size_t total = 0;
    for (const auto& r : rings_) total += r.size();
    points_.reserve(total);
    next_.reserve(total);
    prev_.reserve(total);
    ring_of_.reserve(total);
    for (std::size_t ri = 0; ri < rings_.size(); ++ri) {
        const int base = static_cast<int>(points_.size());
        const int m = static_cast<int>(rings_[ri].size());
        for (int i = 0; i < m; ++i) {
            points_.push_back(rings_[ri][i]);
            next_.push_back(base + (i + 1) % std::max(m, 1));
            prev_.push_back(base + (i + m - 1) % std::max(m, 1));
            ring_of_.push_back(static_cast<int>(ri));
        }
    }

    reflex_.assign(points_.size(), false);
    for (std::size_t i = 0; i < points_.size(); ++i)
        reflex_[i] = orient(points_[prev_[i]], points_[i], points_[next_[i]]) < 0;

    soa_.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const Point2 a = points_[i], b = points_[next_[i]];
        soa_.push(a.x, a.y, b.x, b.y);
    }

    const auto& o = rings_.front();
    for (std::size_t i = 0; i < o.size(); ++i)
        for (std::size_t j = i + 1; j < o.size(); ++j) diameter_ = std::max(diameter_, dist(o[i], o[j]));
}

std::vector<std::vector<Point2>> PolygonShape::holes() const {
    return {rings_.begin() + 1, rings_.end()};
}

VertexRef PolygonShape::vertex_ref(int id) const {
    VertexRef v;
    v.id = id;
    v.ring = ring_of_[id];
    int base = 0;
    for (int r = 0; r < v.ring; ++r) base += static_cast<int>(rings_[r].size());
    v.index = id - base;
    v.p = points_[id];
    v.is_reflex = reflex_[id];
    return v;
}

int PolygonShape::reflex_count() const {
    return static_cast<int>(std::count(reflex_.begin(), reflex_.end(), true));
}

bool PolygonShape::interior_parity(Point2 q) const {
    return (kernels::active().crossings_right(q.x, q.y, soa_) & 1U) != 0;
}

bool PolygonShape::contains_point(Point2 q, double tol) const {
    if (tol < 0.0) tol = eps();
    for (int i = 0; i < edge_count(); ++i) {
        const Segment2 e = edge(i);
        if (point_segment_distance(q, e.a, e.b) <= tol) return true;
    }
    return interior_parity(q);
}

double PolygonShape::area() const {
    double a = 0.0;
    for (const auto& r : rings_) a += signed_area(r);
    return a;
}

// ---------------------------------------------------------------------------

bool ValidationReport::ok() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(
        std::count_if(issues.begin(), issues.end(), [](const auto& i) { return !i.warning; }));
}

std::size_t ValidationReport::warning_count() const { return issues.size() - error_count(); }

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& i : issues) {
        os << (i.warning ? "warning: " : "error: ") << i.message;
        if (!i.vertices.empty()) {
            os << " [vertices";
            for (int v : i.vertices) os << ' ' << v;
            os << ']';
        }
        os << '\n';
    }
    return os.str();
}

InvalidPolygon::InvalidPolygon(ValidationReport report)
    : std::invalid_argument("invalid polygon:\n" + report.to_string()), report_(std::move(report)) {}

ValidationReport validate(const PolygonShape& p) {
    using Kind = ValidationIssue::Kind;
    ValidationReport rep;
    auto add = [&](Kind k, std::string msg, std::vector<int> vs = {}, bool warn = false) {
        rep.issues.push_back({k, warn, std::move(msg), std::move(vs)});
    };

    const auto& rings = p.rings();
    int base = 0;
    std::vector<int> bases;
    bool structural_ok = true;
    for (std::size_t ri = 0; ri < rings.size(); ++ri) {
        bases.push_back(base);
        const auto& ring = rings[ri];
        const std::string name = ri == 0 ? "outer ring" : "hole " + std::to_string(ri - 1);
        if (ring.size() < 3) {
            add(Kind::TooFewVertices, name + " has fewer than 3 vertices");
            structural_ok = false;
        }
        for (std::size_t i = 0; i < ring.size(); ++i) {
            if (!std::isfinite(ring[i].x) || !std::isfinite(ring[i].y)) {
                add(Kind::NonFinite, name + " has a non-finite coordinate", {base + int(i)});
                structural_ok = false;
            }
        }
        base += static_cast<int>(ring.size());
    }
    if (!structural_ok) return rep;

    for (std::size_t ri = 0; ri < rings.size(); ++ri) {
        const auto& ring = rings[ri];
        const int m = static_cast<int>(ring.size());
        const int b0 = bases[ri];
        const std::string name = ri == 0 ? "outer ring" : "hole " + std::to_string(ri - 1);

        bool simple = true;
        for (int i = 0; i < m && simple; ++i) {
            const Point2 a = ring[i], b = ring[(i + 1) % m];
            if (a == b) {
                add(Kind::NonSimpleRing, name + " has a zero-length edge", {b0 + i});
                simple = false;
                break;
            }
            for (int j = i + 1; j < m; ++j) {
                const Point2 c = ring[j], d = ring[(j + 1) % m];
                const bool adjacent = j == i + 1 || (i == 0 && j == m - 1);
                if (adjacent) {
                    // Shared vertex only; reject fold-back overlap.
                    const Point2 shared = j == i + 1 ? b : a;
                    const Point2 other1 = j == i + 1 ? a : b;
                    const Point2 other2 = j == i + 1 ? d : c;
                    if (orient(other1, shared, other2) == 0 &&
                        dot(other1 - shared, other2 - shared) > 0.0) {
                        add(Kind::NonSimpleRing, name + " folds back on itself",
                            {b0 + i, b0 + j});
                        simple = false;
                        break;
                    }
                    continue;
                }
                if (segments_intersect(a, b, c, d)) {
                    add(Kind::NonSimpleRing, name + " self-intersects", {b0 + i, b0 + j});
                    simple = false;
                    break;
                }
            }
        }

        const double area = signed_area(ring);
        if (ri == 0 && area <= 0.0)
            add(Kind::OuterOrientation, "outer ring orientation: expected counterclockwise");
        if (ri > 0 && area >= 0.0)
            add(Kind::HoleOrientation, name + " orientation: expected clockwise");

        // Degenerate vertices: consecutive collinear triples.
        for (int i = 0; i < m; ++i) {
            const Point2 a = ring[(i + m - 1) % m], v = ring[i], c = ring[(i + 1) % m];
            if (orient(a, v, c) == 0)
                add(Kind::GeneralPosition, name + " has collinear consecutive vertices",
                    {b0 + (i + m - 1) % m, b0 + i, b0 + (i + 1) % m}, true);
        }
    }

    // Vertices resting on a non-incident edge of any ring.
    const int nv = p.vertex_count();
    for (int v = 0; v < nv; ++v) {
        const Point2 q = p.vertex(v);
        for (int e = 0; e < p.edge_count(); ++e) {
            if (e == v || p.next(e) == v) continue;
            const Segment2 s = p.edge(e);
            if (orient(s.a, s.b, q) == 0 && point_segment_distance(q, s.a, s.b) == 0.0 &&
                p.ring_of(e) == p.ring_of(v))
                add(Kind::GeneralPosition, "vertex lies on a non-incident edge",
                    {e, p.next(e), v}, true);
        }
    }

    for (std::size_t hi = 1; hi < rings.size(); ++hi) {
        const auto& hole = rings[hi];
        const std::string name = "hole " + std::to_string(hi - 1);
        bool inside = !rings_touch(rings[0], hole);
        for (const Point2& q : hole)
            if (!inside || !ring_strictly_contains(rings[0], q)) {
                inside = false;
                break;
            }
        if (!inside) add(Kind::HoleOutsideOuter, name + " is not strictly inside the outer ring");
        for (std::size_t hj = hi + 1; hj < rings.size(); ++hj) {
            const auto& other = rings[hj];
            bool overlap = rings_touch(hole, other) || ring_parity(hole, other.front()) ||
                           ring_parity(other, hole.front());
            if (overlap)
                add(Kind::HolesIntersect,
                    name + " and hole " + std::to_string(hj - 1) + " are not disjoint");
        }
    }
    return rep;
}

void require_valid(const PolygonShape& p) {
    ValidationReport rep = validate(p);
    if (!rep.ok()) throw InvalidPolygon(std::move(rep));
}

std::vector<VertexRef> reflex_vertices(const PolygonShape& p) {
    require_valid(p);
    std::vector<VertexRef> out;
    for (int i = 0; i < p.vertex_count(); ++i)
        if (p.is_reflex(i)) out.push_back(p.vertex_ref(i));
    return out;
}

// ---------------------------------------------------------------------------

bool contains_rect(const PolygonShape& p, const RectSpec& r, double tol) {
    if (tol < 0.0) tol = p.eps();
    const kernels::OrientedBox box = box_of(r, tol);
    if (kernels::active().any_edge_meets_box(p.edge_soa(), box)) return false;
    return p.interior_parity(r.center);
}

bool segment_in_polygon(const PolygonShape& p, Point2 a, Point2 b, double tol) {
    if (tol < 0.0) tol = p.eps();
    const double len = dist(a, b);
    if (len <= 2.0 * tol) return p.contains_point(midpoint(a, b), tol);
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);

    // Split the segment at every boundary contact, then test the pieces'
    // midpoints. A proper crossing is fatal unless it happens within tol of
    // an endpoint of either segment (a touch up to tolerance).
    std::vector<double> ts{0.0, 1.0};
    for (int i = 0; i < p.edge_count(); ++i) {
        const Segment2 e = p.edge(i);
        for (Point2 q : {e.a, e.b})
            if (point_segment_distance(q, a, b) <= tol)
                ts.push_back(std::clamp(dot(q - a, ab) / len2, 0.0, 1.0));
        if (!segments_cross_properly(a, b, e.a, e.b)) continue;
        Point2 x;
        if (!line_intersection(a, b, e.a, e.b, x)) continue;
        if (dist(x, a) <= tol || dist(x, b) <= tol || dist(x, e.a) <= tol || dist(x, e.b) <= tol) {
            ts.push_back(std::clamp(dot(x - a, ab) / len2, 0.0, 1.0));
            continue;
        }
        return false;
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ts[i + 1] - ts[i] <= 0.0) continue;
        if (!p.contains_point(lerp(a, b, 0.5 * (ts[i] + ts[i + 1])), tol)) return false;
    }
    return p.contains_point(a, tol) && p.contains_point(b, tol);
}

bool sides_contained(const PolygonShape& p, const RectSpec& r, double tol) {
    if (tol < 0.0) tol = p.eps();
    const auto c = rect_corners(shrunk(r, tol));
    for (int i = 0; i < 4; ++i)
        if (!segment_in_polygon(p, c[i], c[(i + 1) % 4], tol)) return false;
    return true;
}

bool hole_free(const PolygonShape& p, const RectSpec& r, double tol) {
    if (tol < 0.0) tol = p.eps();
    const RectSpec s = shrunk(r, tol);
    const Frame f(s.theta);
    const auto c = rect_corners(s);
    const auto& rings = p.rings();
    for (std::size_t hi = 1; hi < rings.size(); ++hi) {
        const auto& hole = rings[hi];
        for (std::size_t i = 0; i < hole.size(); ++i) {
            const Point2 q = f.to_frame(hole[i] - s.center);
            if (std::fabs(q.x) < 0.5 * s.width && std::fabs(q.y) < 0.5 * s.height) return false;
            const Point2 a = hole[i], b = hole[(i + 1) % hole.size()];
            for (int k = 0; k < 4; ++k)
                if (segments_cross_properly(a, b, c[k], c[(k + 1) % 4])) return false;
        }
        for (const Point2& q : c)
            if (ring_strictly_contains(hole, q)) return false;
    }
    return true;
}

}  // namespace maxrect
