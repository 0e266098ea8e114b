#include "maxrect/ray_vis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace maxrect {

namespace {

constexpr double kAngleTol = 1e-12;

Point2 unit(Point2 v) {
    const double n = norm(v);
    return n > 0.0 ? v * (1.0 / n) : v;
}

// Walks the ray from t = tcur, skipping vertices the ray passes through while
// staying in closed P, and returns the first escape.
RayFoot walk(const PolygonShape& p, Point2 o, Point2 d, double tcur, int skip_vertex) {
    const double tol = p.eps();
    const auto& k = kernels::active();
    RayFoot r;
    r.origin = o;
    r.direction = d;
    const auto& pts = p.points();
    for (int iter = 0; iter <= p.vertex_count() + 1; ++iter) {
        const kernels::RayHit h = k.ray_first_hit(o.x, o.y, d.x, d.y, p.edge_soa(), tcur);
        int best = -1;
        double tb = std::numeric_limits<double>::infinity();
        for (int w = 0; w < p.vertex_count(); ++w) {
            if (w == skip_vertex) continue;
            const Point2 rel = pts[w] - o;
            const double t = dot(rel, d);
            if (t <= tcur || t > h.t + tol || t >= tb) continue;
            if (std::fabs(cross(d, rel)) > tol) continue;
            tb = t;
            best = w;
        }
        if (best < 0) {
            if (h.edge < 0) break;  // numerically lost; report the origin
            r.t = h.t;
            r.foot = o + d * h.t;
            r.edge = static_cast<int>(h.edge);
            return r;
        }
        if (!direction_enters(p, best, d)) {
            r.t = tb;
            r.foot = pts[best];
            r.vertex = best;
            return r;
        }
        tcur = tb + tol;
    }
    r.t = 0.0;
    r.foot = o;
    return r;
}

}  // namespace

bool direction_enters(const PolygonShape& p, int v, Point2 dir) {
    const Point2 w = p.vertex(v);
    const Point2 e1 = unit(p.vertex(p.next(v)) - w);
    const Point2 e2 = unit(p.vertex(p.prev(v)) - w);
    const Point2 d = unit(dir);
    if (cross(e1, e2) >= 0.0) return cross(e1, d) >= -kAngleTol && cross(d, e2) >= -kAngleTol;
    return !(cross(e2, d) > kAngleTol && cross(d, e1) > kAngleTol);
}

RayFoot shoot_from_vertex(const PolygonShape& p, int v, Point2 dir) {
    const Point2 d = unit(dir);
    const Point2 o = p.vertex(v);
    if (!direction_enters(p, v, d)) {
        RayFoot r;
        r.origin = r.foot = o;
        r.direction = d;
        r.vertex = v;
        return r;
    }
    return walk(p, o, d, p.eps(), v);
}

RayFoot shoot(const PolygonShape& p, Point2 origin, Point2 dir) {
    const double tol = p.eps();
    const Point2 d = unit(dir);
    for (int v = 0; v < p.vertex_count(); ++v)
        if (dist(p.vertex(v), origin) <= tol) return shoot_from_vertex(p, v, d);
    for (int e = 0; e < p.edge_count(); ++e) {
        const Segment2 s = p.edge(e);
        if (point_segment_distance(origin, s.a, s.b) > tol) continue;
        const Point2 ed = unit(s.b - s.a);
        if (cross(ed, d) < -kAngleTol) {
            RayFoot r;
            r.origin = r.foot = origin;
            r.direction = d;
            r.edge = e;
            return r;
        }
        return walk(p, origin, d, tol, -1);
    }
    if (!p.interior_parity(origin)) throw std::invalid_argument("shoot: origin outside polygon");
    return walk(p, origin, d, 0.0, -1);
}

bool sees(const PolygonShape& p, Point2 a, Point2 b) { return segment_in_polygon(p, a, b); }

// ---------------------------------------------------------------------------

bool VisRegion::contains(Point2 q, double tol) const {
    const std::size_t n = boundary.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2 a = boundary[j], b = boundary[i];
        if (point_segment_distance(q, a, b) <= tol) return true;
        if ((a.y > q.y) == (b.y > q.y)) continue;
        const double x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (x > q.x) inside = !inside;
    }
    return inside;
}

VisRegion visibility_region(const PolygonShape& p, int v) {
    if (v < 0 || v >= p.vertex_count()) throw std::invalid_argument("visibility_region: invalid vertex");
    const double tol = p.eps();
    const Point2 w0 = p.vertex(v);
    const double dir0 = direction_angle(p.vertex(p.next(v)) - w0);
    const double wedge = normalize_angle(direction_angle(p.vertex(p.prev(v)) - w0) - dir0);

    std::vector<double> phis{0.0, wedge};
    for (int w = 0; w < p.vertex_count(); ++w) {
        if (w == v || w == p.next(v) || w == p.prev(v)) continue;
        const double phi = normalize_angle(direction_angle(p.vertex(w) - w0) - dir0);
        if (phi <= 0.0 || phi >= wedge) continue;
        if (sees(p, w0, p.vertex(w))) phis.push_back(phi);
    }
    std::sort(phis.begin(), phis.end());
    phis.erase(std::unique(phis.begin(), phis.end(),
                           [](double a, double b) { return b - a <= kAngleTol; }),
               phis.end());

    // Limit of the visibility boundary along the ray w0 -> through, approached
    // from the clockwise (side = -1) or counterclockwise (side = +1) side:
    // the nearest boundary point on the ray whose edge extends to that side.
    auto limit_point = [&](Point2 through, int side) {
        const Point2 dir = through - w0;
        const double dd = dot(dir, dir);
        double best = std::numeric_limits<double>::infinity();
        for (int e = 0; e < p.edge_count(); ++e) {
            const Segment2 s = p.edge(e);
            const int c0 = orient(w0, through, s.a), c1 = orient(w0, through, s.b);
            double t;
            if (c0 * c1 < 0) {
                Point2 x;
                if (!line_intersection(w0, through, s.a, s.b, x)) continue;
                t = dot(x - w0, dir) / dd;
            } else if (c0 == 0 && c1 == side) {
                t = dot(s.a - w0, dir) / dd;
            } else if (c1 == 0 && c0 == side) {
                t = dot(s.b - w0, dir) / dd;
            } else {
                continue;
            }
            if (t * std::sqrt(dd) > tol && t < best) best = t;
        }
        return w0 + dir * best;
    };

    // Representative vertex for each distinct direction (nearest visible one).
    std::vector<Point2> through(phis.size());
    for (std::size_t i = 0; i < phis.size(); ++i) {
        double bd = std::numeric_limits<double>::infinity();
        for (int w = 0; w < p.vertex_count(); ++w) {
            if (w == v) continue;
            const double phi = normalize_angle(direction_angle(p.vertex(w) - w0) - dir0);
            const double gap = std::min(std::fabs(phi - phis[i]), kTwoPi - std::fabs(phi - phis[i]));
            if (gap > kAngleTol) continue;
            if (dist(p.vertex(w), w0) < bd) {
                bd = dist(p.vertex(w), w0);
                through[i] = p.vertex(w);
            }
        }
    }
    through.front() = p.vertex(p.next(v));
    through.back() = p.vertex(p.prev(v));

    VisRegion reg;
    reg.source = v;
    auto push = [&](Point2 q) {
        if (reg.boundary.empty() || dist(reg.boundary.back(), q) > tol) reg.boundary.push_back(q);
    };
    push(w0);
    for (std::size_t i = 0; i < phis.size(); ++i) {
        if (i == 0) {
            push(p.vertex(p.next(v)));
            push(limit_point(through[i], +1));
        } else if (i + 1 == phis.size()) {
            push(limit_point(through[i], -1));
            push(p.vertex(p.prev(v)));
        } else {
            push(limit_point(through[i], -1));
            push(limit_point(through[i], +1));
        }
    }
    if (reg.boundary.size() > 1 && dist(reg.boundary.back(), reg.boundary.front()) <= tol)
        reg.boundary.pop_back();

    // Provenance: a boundary piece is a polygon edge when both ends and the
    // midpoint lie on the same edge.
    const std::size_t m = reg.boundary.size();
    reg.edge_of.assign(m, -1);
    const double ptol = 10.0 * tol;
    for (std::size_t i = 0; i < m; ++i) {
        const Point2 a = reg.boundary[i], b = reg.boundary[(i + 1) % m];
        for (int e = 0; e < p.edge_count(); ++e) {
            const Segment2 s = p.edge(e);
            if (point_segment_distance(a, s.a, s.b) <= ptol &&
                point_segment_distance(b, s.a, s.b) <= ptol &&
                point_segment_distance(midpoint(a, b), s.a, s.b) <= ptol) {
                reg.edge_of[i] = e;
                break;
            }
        }
    }
    return reg;
}

// ---------------------------------------------------------------------------

std::size_t EventMap::circle_entries() const {
    std::size_t s = 0;
    for (const auto& [k, v] : circle) s += v.crossings.size();
    return s;
}

std::size_t EventMap::foot_entries() const {
    std::size_t s = 0;
    for (const auto& [k, v] : foot) s += v.size();
    return s;
}

namespace {

std::vector<Point2> clipped_boundary(const PolygonShape& p, Point2 pa, Point2 pb,
                                     const VisRegion& va, const VisRegion& vb) {
    const double tol = 10 * p.eps();
    const Point2 c = midpoint(pa, pb);
    const double r = 0.5 * dist(pa, pb) + tol;
    std::vector<Point2> pts;
    auto keep = [&](Point2 x) {
        if (dist(x, c) <= r && va.contains(x, tol) && vb.contains(x, tol)) pts.push_back(x);
    };
    for (const Point2& x : va.boundary) keep(x);
    for (const Point2& x : vb.boundary) keep(x);
    const std::size_t na = va.boundary.size(), nb = vb.boundary.size();
    for (std::size_t i = 0; i < na; ++i) {
        const Point2 a0 = va.boundary[i], a1 = va.boundary[(i + 1) % na];
        for (std::size_t j = 0; j < nb; ++j) {
            const Point2 b0 = vb.boundary[j], b1 = vb.boundary[(j + 1) % nb];
            if (!segments_cross_properly(a0, a1, b0, b1)) continue;
            Point2 x;
            if (line_intersection(a0, a1, b0, b1, x)) keep(x);
        }
    }
    for (const VisRegion* reg : {&va, &vb}) {
        const std::size_t m = reg->boundary.size();
        for (std::size_t i = 0; i < m; ++i) {
            double ts[2];
            const Point2 s0 = reg->boundary[i], s1 = reg->boundary[(i + 1) % m];
            const int cnt = thales_segment_params(pa, pb, s0, s1, ts);
            for (int j = 0; j < cnt; ++j) keep(lerp(s0, s1, ts[j]));
        }
    }
    std::sort(pts.begin(), pts.end(), [&](Point2 l, Point2 rr) {
        return direction_angle(l - c) < direction_angle(rr - c);
    });
    pts.erase(std::unique(pts.begin(), pts.end(), [&](Point2 l, Point2 rr) { return dist(l, rr) <= tol; }),
              pts.end());
    return pts;
}

std::vector<CircleEntry> circle_list(const PolygonShape& p, int a, int b, const VisRegion& va,
                                     const VisRegion& vb) {
    const double tol = p.eps();
    const Point2 pa = p.vertex(a), pb = p.vertex(b);
    std::vector<CircleEntry> out;
    for (const VisRegion* reg : {&va, &vb}) {
        const std::size_t m = reg->boundary.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Point2 s0 = reg->boundary[i], s1 = reg->boundary[(i + 1) % m];
            double ts[2];
            const int cnt = thales_segment_params(pa, pb, s0, s1, ts);
            for (int j = 0; j < cnt; ++j) {
                const Point2 x = lerp(s0, s1, ts[j]);
                if (dist(x, pa) <= 10 * tol || dist(x, pb) <= 10 * tol) continue;
                if (cross(pb - x, pa - x) <= 0.0) continue;
                if (!va.contains(x, 10 * tol) || !vb.contains(x, 10 * tol)) continue;
                out.push_back({direction_angle(pb - x), x, reg->edge_of[i], reg->edge_of[i] < 0});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const CircleEntry& l, const CircleEntry& r) { return l.theta < r.theta; });
    out.erase(std::unique(out.begin(), out.end(),
                          [&](const CircleEntry& l, const CircleEntry& r) {
                              return r.theta - l.theta <= 1e-12 && dist(l.point, r.point) <= 10 * tol;
                          }),
              out.end());
    return out;
}

std::vector<FootEntry> foot_list(const PolygonShape& p, int u, int e) {
    const double tol = p.eps();
    const double match = 100.0 * tol;
    const Point2 pu = p.vertex(u);
    const Segment2 s = p.edge(e);
    std::vector<FootEntry> out;
    for (int w = 0; w < p.vertex_count(); ++w) {
        if (w == u) continue;
        const Point2 pw = p.vertex(w);
        double ts[2];
        const int cnt = thales_segment_params(pu, pw, s.a, s.b, ts);
        for (int j = 0; j < cnt; ++j) {
            const Point2 x = lerp(s.a, s.b, ts[j]);
            if (dist(x, pu) <= match || dist(x, pw) <= match) continue;
            const double c = cross(pu - x, pw - x);
            FootEntry fe;
            fe.vertex = w;
            fe.foot = x;
            Point2 shot_dir;
            if (c < 0.0) {
                fe.ray = FootEntry::Ray::DeltaOfEta;
                fe.theta = direction_angle(pu - x);
                shot_dir = -frame_x(fe.theta);
            } else {
                fe.ray = FootEntry::Ray::EtaOfDelta;
                fe.theta = direction_angle(x - pw);
                shot_dir = -frame_y(fe.theta);
            }
            const RayFoot f = shoot_from_vertex(p, u, shot_dir);
            if (dist(f.foot, x) > match) continue;
            if (!sees(p, x, pw)) continue;
            out.push_back(fe);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const FootEntry& l, const FootEntry& r) { return l.theta < r.theta; });
    return out;
}

}  // namespace

EventMap build_event_map(const PolygonShape& p) {
    require_valid(p);
    EventMap em;
    em.visibility.reserve(p.vertex_count());
    for (int v = 0; v < p.vertex_count(); ++v) em.visibility.push_back(visibility_region(p, v));

    std::vector<int> reflex;
    for (int v = 0; v < p.vertex_count(); ++v)
        if (p.is_reflex(v)) reflex.push_back(v);

    for (int a : reflex)
        for (int b : reflex) {
            if (a == b) continue;
            if (!sees(p, p.vertex(a), p.vertex(b))) {
                em.circle[{a, b}] = {};
                continue;
            }
            CircleList& cl = em.circle[{a, b}];
            cl.boundary = clipped_boundary(p, p.vertex(a), p.vertex(b), em.visibility[a],
                                           em.visibility[b]);
            cl.crossings = circle_list(p, a, b, em.visibility[a], em.visibility[b]);
        }
    for (int u : reflex)
        for (int e = 0; e < p.edge_count(); ++e) {
            auto lst = foot_list(p, u, e);
            if (!lst.empty()) em.foot[{u, e}] = std::move(lst);
        }
    return em;
}

}  // namespace maxrect
