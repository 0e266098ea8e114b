#include "maxrect/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace maxrect {

namespace {

constexpr int kEtaLabel = -2;
constexpr int kDeltaLabel = -3;

struct Piece {
    double x1, y1, x2, y2;  // x1 <= x2
    int edge;
    int left_vertex, right_vertex;  // -1 when clipped
    bool rising() const { return x1 < x2 && y1 > y2; }
    double at(double x) const {
        if (x2 == x1) return std::max(y1, y2);
        return y1 + (y2 - y1) * (x - x1) / (x2 - x1);
    }
    double x_at(double y) const { return x1 + (x2 - x1) * (y - y1) / (y2 - y1); }
};

// Liang–Barsky clip of segment a->b to the box; returns false when empty.
bool clip(Point2 a, Point2 b, double xmin, double xmax, double ymin, double ymax, double& t0, double& t1) {
    t0 = 0.0;
    t1 = 1.0;
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double pp[4] = {-dx, dx, -dy, dy};
    const double qq[4] = {a.x - xmin, xmax - a.x, a.y - ymin, ymax - a.y};
    for (int i = 0; i < 4; ++i) {
        if (pp[i] == 0.0) {
            if (qq[i] < 0.0) return false;
            continue;
        }
        const double r = qq[i] / pp[i];
        if (pp[i] < 0.0) {
            if (r > t1) return false;
            t0 = std::max(t0, r);
        } else {
            if (r < t0) return false;
            t1 = std::min(t1, r);
        }
    }
    return t0 <= t1;
}

struct ChainPoint {
    Point2 f;
    int label = -1;  // vertex id for extremal tips, kEtaLabel / kDeltaLabel, or -1
};

}  // namespace

// ---------------------------------------------------------------------------

bool AngleInterval::contains(double theta, double slack) const {
    const double rel = normalize_angle(theta - begin);
    return rel <= length + slack || rel >= kTwoPi - slack;
}

namespace {
// Interior wedge at u: starts at the direction of next(u), opens counterclockwise.
void interior_wedge(const PolygonShape& p, int u, double& start, double& width) {
    const Point2 w = p.vertex(u);
    start = direction_angle(p.vertex(p.next(u)) - w);
    width = normalize_angle(direction_angle(p.vertex(p.prev(u)) - w) - start);
}
}  // namespace

AngleInterval quadrant_interval(const PolygonShape& p, int u) {
    double e1, w;
    interior_wedge(p, u, e1, w);
    return {normalize_angle(e1 - kPi), std::max(0.0, w - kHalfPi)};
}

AngleInterval top_contact_interval(const PolygonShape& p, int u) {
    double e1, w;
    interior_wedge(p, u, e1, w);
    return {normalize_angle(e1 - kPi), std::max(0.0, w - kPi)};
}

// ---------------------------------------------------------------------------

std::vector<int> StaircaseState::tips() const {
    std::vector<int> t;
    for (const auto& e : extremal)
        if (e.kind == Extremal::Kind::Tip) t.push_back(e.vertex);
    return t;
}

bool StaircaseState::same_structure(const StaircaseState& o) const {
    if (eta.edge != o.eta.edge || eta.vertex != o.eta.vertex) return false;
    if (delta.edge != o.delta.edge || delta.vertex != o.delta.vertex) return false;
    if (extremal.size() != o.extremal.size() || steps.size() != o.steps.size()) return false;
    for (std::size_t i = 0; i < extremal.size(); ++i)
        if (extremal[i].kind != o.extremal[i].kind || extremal[i].vertex != o.extremal[i].vertex)
            return false;
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (steps[i].kind != o.steps[i].kind || steps[i].oblique_edges != o.steps[i].oblique_edges)
            return false;
    return true;
}

std::string StaircaseState::signature() const {
    std::ostringstream os;
    os << "eta:" << (eta.vertex >= 0 ? "v" : "e") << (eta.vertex >= 0 ? eta.vertex : eta.edge);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const Step& s = steps[i];
        os << " [" << (s.kind == Step::Kind::A ? "A" : "B");
        for (std::size_t j = 0; j < s.oblique_edges.size(); ++j) os << (j ? "," : ":e") << s.oblique_edges[j];
        os << "]";
        if (i + 1 < steps.size()) os << " t" << extremal[i + 1].vertex;
    }
    os << " delta:" << (delta.vertex >= 0 ? "v" : "e") << (delta.vertex >= 0 ? delta.vertex : delta.edge);
    return os.str();
}

double StaircaseState::left_extent(double y) const {
    if (chain.empty()) return 0.0;
    if (y >= chain.front().y) return chain.front().x;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const Point2 a = chain[i], b = chain[i + 1];
        if (y > a.y || y < b.y) continue;
        if (a.y == b.y || a.x == b.x) return a.x;
        return a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
    }
    return chain.back().x;
}

double StaircaseState::lower_extent(double x) const {
    if (chain.empty()) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const Point2 a = chain[i], b = chain[i + 1];
        if (x < a.x || x > b.x) continue;
        found = true;
        double y;
        if (a.x == b.x)
            y = b.y;
        else if (x == b.x)
            y = b.y;
        else
            y = a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
        best = std::min(best, y);
    }
    if (!found) return x < chain.front().x ? chain.front().y : chain.back().y;
    return best;
}

int StaircaseState::step_at_height(double y) const {
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const double top = extremal[steps[i].upper].f.y;
        const double bot = extremal[steps[i].lower].f.y;
        if (y <= top && y >= bot) return static_cast<int>(i);
    }
    return steps.empty() ? -1 : (y > extremal.front().f.y ? 0 : static_cast<int>(steps.size()) - 1);
}

// ---------------------------------------------------------------------------

StaircaseState build_staircase(const PolygonShape& p, int u, double theta) {
    if (u < 0 || u >= p.vertex_count() || !p.is_reflex(u))
        throw std::invalid_argument("build_staircase: owner is not a reflex vertex");
    if (!quadrant_interval(p, u).contains(theta, 1e-12))
        throw std::invalid_argument("build_staircase: orientation outside the valid interval");

    const double tol = p.eps();
    const double tiny = 1e-12 * p.diameter();
    const Frame fr(theta);
    const Point2 uo = p.vertex(u);
    const Point2 d = fr.x_axis(), n = fr.y_axis();

    StaircaseState st;
    st.owner = u;
    st.theta = fr.theta();
    st.origin = uo;
    st.eta = shoot_from_vertex(p, u, -d);
    st.delta = shoot_from_vertex(p, u, -n);
    const double xeta = std::min(0.0, dot(st.eta.foot - uo, d));
    const double ydelta = std::min(0.0, dot(st.delta.foot - uo, n));

    // Boundary pieces inside the box spanned by u and the two feet.
    std::vector<Piece> pieces;
    for (int e = 0; e < p.edge_count(); ++e) {
        if (e == u || p.next(e) == u) continue;
        const int va = e, vb = p.next(e);
        const Point2 a = fr.to_frame(p.vertex(va) - uo), b = fr.to_frame(p.vertex(vb) - uo);
        double t0, t1;
        if (!clip(a, b, xeta, 0.0, ydelta, 0.0, t0, t1)) continue;
        const Point2 c0 = t0 == 0.0 ? a : lerp(a, b, t0), c1 = t1 == 1.0 ? b : lerp(a, b, t1);
        if (std::max(c0.y, c1.y) >= -tol || std::max(c0.x, c1.x) >= -tol) {
            // Pieces hugging the quadrant's own sides are not obstacles.
            if ((c0.y >= -tol && c1.y >= -tol) || (c0.x >= -tol && c1.x >= -tol)) continue;
        }
        Piece pc;
        pc.edge = e;
        const int v0 = t0 == 0.0 ? va : -1, v1 = t1 == 1.0 ? vb : -1;
        if (c0.x < c1.x || (c0.x == c1.x && c0.y < c1.y)) {
            pc = {c0.x, c0.y, c1.x, c1.y, e, v0, v1};
        } else {
            pc = {c1.x, c1.y, c0.x, c0.y, e, v1, v0};
        }
        pieces.push_back(pc);
    }

    // Right-to-left sweep of the envelope Y(x) = max{o_y : o obstacle, o_x > x}.
    std::vector<double> xs{xeta};
    for (const Piece& pc : pieces) {
        if (pc.x2 > xeta && pc.x2 < 0.0) xs.push_back(pc.x2);
        if (pc.x1 > xeta && pc.x1 < 0.0) xs.push_back(pc.x1);
    }
    std::sort(xs.begin(), xs.end(), std::greater<>());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<ChainPoint> rl;  // right-to-left
    std::vector<int> rl_edge;    // edge of piece rl[i] -> rl[i+1]
    auto add = [&](Point2 q, int edge, int label) {
        if (!rl.empty() && dist(rl.back().f, q) <= tiny * 0.1) {
            if (label != -1) rl.back().label = label;
            return;
        }
        rl_edge.push_back(edge);
        rl.push_back({q, label});
    };
    rl.push_back({{0.0, ydelta}, kDeltaLabel});

    double level = ydelta;
    double cur = 0.0;
    // Jumps exactly at x = 0 (vertices grazing the downward ray).
    for (const Piece& pc : pieces) {
        if (pc.x2 >= 0.0 && std::max(pc.y2, pc.x1 == pc.x2 ? pc.y1 : pc.y2) > level) {
            const double top = pc.x1 == pc.x2 ? std::max(pc.y1, pc.y2) : pc.y2;
            const int vtx = pc.x1 == pc.x2 ? (pc.y1 > pc.y2 ? pc.left_vertex : pc.right_vertex) : pc.right_vertex;
            if (top > level) {
                level = top;
                add({0.0, level}, -1, vtx);
            }
        }
    }

    for (double X : xs) {
        if (X >= cur) continue;
        // Interval (X, cur): the topmost rising line spanning it.
        const double mid = 0.5 * (X + cur);
        int top = -1;
        double topv = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const Piece& pc = pieces[i];
            if (!pc.rising() || pc.x1 > X || pc.x2 < cur) continue;
            const double v = pc.at(mid);
            if (v > topv) {
                topv = v;
                top = static_cast<int>(i);
            }
        }
        if (top >= 0 && pieces[top].at(X) > level + tiny) {
            const Piece& pc = pieces[top];
            const double vcur = pc.at(cur);
            if (vcur < level) {
                const double xs_ = pc.x_at(level);
                add({xs_, level}, -1, -1);
            }
            add({X, pc.at(X)}, pc.edge, -1);
            level = pc.at(X);
        } else {
            add({X, level}, -1, -1);
        }
        cur = X;

        // Pieces ending at X (left ends) keep their value as a constant.
        for (const Piece& pc : pieces) {
            if (pc.x1 == X && pc.x1 < pc.x2 && pc.y1 >= level - tiny && pc.y1 > pc.y2) {
                if (pc.y1 > level + tiny) add({X, pc.y1}, -1, -1);
                level = std::max(level, pc.y1);
                // A convex bend between two rising edges is not a tip.
                if (pc.left_vertex >= 0 && p.is_reflex(pc.left_vertex)) rl.back().label = pc.left_vertex;
            }
        }
        // Pieces starting at X (right ends): jumps.
        double jump = level;
        int jump_vertex = -1;
        for (const Piece& pc : pieces) {
            if (pc.x2 != X) continue;
            double topy = pc.y2;
            int vtx = pc.right_vertex;
            if (pc.x1 == pc.x2 && pc.y1 > pc.y2) {
                topy = pc.y1;
                vtx = pc.left_vertex;
            }
            if (topy > jump) {
                jump = topy;
                jump_vertex = vtx;
            }
        }
        if (jump > level + tiny) {
            level = jump;
            add({X, level}, -1, jump_vertex);
        }
    }
    // Rise to the leftward foot.
    add({xeta, 0.0}, -1, kEtaLabel);
    rl.back().label = kEtaLabel;

    // Left-to-right chain; drop collinear interior points without labels.
    std::vector<ChainPoint> ch(rl.rbegin(), rl.rend());
    std::vector<int> ce(rl_edge.rbegin(), rl_edge.rend());
    ce.pop_back();  // rl_edge[0] was a placeholder for the first point
    {
        std::vector<ChainPoint> c2{ch.front()};
        std::vector<int> e2;
        for (std::size_t i = 1; i < ch.size(); ++i) {
            const bool last = i + 1 == ch.size();
            if (!last && ch[i].label == -1 && ce[i - 1] == ce[i]) {
                const Point2 a = c2.back().f, b = ch[i].f, c = ch[i + 1].f;
                const bool collinear = std::fabs(cross(b - a, c - b)) <= 1e-12 * (norm(b - a) + norm(c - b)) *
                                                                             (norm(b - a) + norm(c - b)) +
                                                                         0.0;
                if (collinear) continue;
            }
            e2.push_back(ce[i - 1]);
            c2.push_back(ch[i]);
        }
        ch.swap(c2);
        ce.swap(e2);
    }

    auto world = [&](Point2 f) { return uo + d * f.x + n * f.y; };
    for (std::size_t i = 0; i < ch.size(); ++i) {
        const int lab = ch[i].label;
        if (lab == -1) continue;
        Extremal ex;
        ex.f = ch[i].f;
        ex.p = world(ch[i].f);
        if (lab == kEtaLabel) {
            ex.kind = Extremal::Kind::EtaFoot;
            ex.edge = st.eta.edge;
            ex.vertex = st.eta.vertex;
            ex.p = st.eta.foot;
        } else if (lab == kDeltaLabel) {
            ex.kind = Extremal::Kind::DeltaFoot;
            ex.edge = st.delta.edge;
            ex.vertex = st.delta.vertex;
            ex.p = st.delta.foot;
        } else {
            ex.kind = Extremal::Kind::Tip;
            ex.vertex = lab;
            ex.p = p.vertex(lab);
        }
        st.extremal.push_back(ex);
    }
    // Chain indices of the extremal points, to split steps.
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < ch.size(); ++i)
        if (ch[i].label != -1) at.push_back(i);
    for (std::size_t k = 0; k + 1 < at.size(); ++k) {
        Step s;
        s.upper = static_cast<int>(k);
        s.lower = static_cast<int>(k + 1);
        const Point2 a = st.extremal[k].f, b = st.extremal[k + 1].f;
        s.hinge = {a.x, b.y};
        s.kind = Step::Kind::A;
        for (std::size_t i = at[k]; i < at[k + 1]; ++i) {
            if (ce[i] < 0 || dist(ch[i].f, ch[i + 1].f) <= tiny * 0.1) continue;
            if (s.kind == Step::Kind::A) {
                s.kind = Step::Kind::B;
                s.oblique_edge = ce[i];
                s.top = ch[i].f;
            }
            if (s.oblique_edges.empty() || s.oblique_edges.back() != ce[i]) s.oblique_edges.push_back(ce[i]);
            s.bottom = ch[i + 1].f;
        }
        st.steps.push_back(s);
    }
    for (const auto& c : ch) st.chain.push_back(c.f);
    st.chain_edge = ce;
    return st;
}

// ---------------------------------------------------------------------------

namespace {
const Extremal& require_tip(const StaircaseState& s, int t) {
    for (const Extremal& e : s.extremal)
        if (e.kind == Extremal::Kind::Tip && e.vertex == t) return e;
    throw std::invalid_argument("double lookup: vertex is not a tip of the staircase");
}
}  // namespace

Extremal double_lookup_f(const StaircaseState& s, const StaircaseState& perpendicular, int t) {
    const Extremal& tip = require_tip(s, t);
    if (perpendicular.extremal.empty()) throw std::invalid_argument("double lookup: empty staircase");
    // Height in the frame of s is the frame x of the perpendicular staircase;
    // its extremals run from low to high x, so the upper end of a step is the
    // later extremal and ties pick the later step.
    const double h = tip.f.y;
    const auto& ex = perpendicular.extremal;
    std::size_t k = ex.size() - 1;
    for (std::size_t i = 0; i + 1 < ex.size(); ++i) {
        if (h < ex[i + 1].f.x) {
            k = i + 1;
            break;
        }
    }
    return ex[k];
}

int double_lookup_g(const PolygonShape& p, const StaircaseState& s, int t) {
    require_tip(s, t);
    return shoot_from_vertex(p, t, -s.frame().x_axis()).edge;
}

// ---------------------------------------------------------------------------

const char* kind_name(EventRecord::Kind k) {
    switch (k) {
        case EventRecord::Kind::StepMerge: return "step-merge";
        case EventRecord::Kind::StepSplit: return "step-split";
        case EventRecord::Kind::HingeOblique: return "hinge-oblique";
        case EventRecord::Kind::TipVanish: return "tip-vanish";
        case EventRecord::Kind::Ray: return "ray";
        case EventRecord::Kind::Shift: return "shift";
        case EventRecord::Kind::DoubleAlign: return "double-align";
        case EventRecord::Kind::TAlign: return "t-align";
    }
    return "?";
}

std::string EventRecord::to_string() const {
    std::ostringstream os;
    os << std::setprecision(12) << theta << ' ' << kind_name(kind) << " v=[";
    for (std::size_t i = 0; i < vertices.size(); ++i) os << (i ? "," : "") << vertices[i];
    os << "] e=[";
    for (std::size_t i = 0; i < edges.size(); ++i) os << (i ? "," : "") << edges[i];
    os << ']';
    return os.str();
}

void write_trace(std::ostream& os, int owner, const std::vector<EventRecord>& records) {
    for (const auto& r : records) os << r.to_string() << " u=" << owner << '\n';
}

std::vector<Alignment> alignment_table(const PolygonShape& p) {
    std::vector<Alignment> out;
    const int nv = p.vertex_count();
    out.reserve(static_cast<std::size_t>(nv) * (nv - 1) * 2);
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j) {
            const double phi = direction_angle(p.vertex(j) - p.vertex(i));
            out.push_back({phi, i, j, false});
            out.push_back({normalize_angle(phi + kPi), i, j, false});
            out.push_back({normalize_angle(phi + kHalfPi), i, j, true});
            out.push_back({normalize_angle(phi - kHalfPi), i, j, true});
        }
    std::sort(out.begin(), out.end(), [](const Alignment& a, const Alignment& b) { return a.theta < b.theta; });
    return out;
}

// ---------------------------------------------------------------------------

std::vector<double> hinge_line_events(const PolygonShape& p, int u, int upper_vertex, int upper_foot_edge,
                                      int lower_vertex, int lower_foot_edge, int edge) {
    const Point2 uo = p.vertex(u);
    HomPoly xn, xd, yn, yd;
    if (upper_vertex >= 0) {
        const Point2 a = p.vertex(upper_vertex) - uo;
        xn = HomPoly::linear(a.x, a.y);
        xd = HomPoly::constant(1.0);
    } else {
        const Segment2 s = p.edge(upper_foot_edge);
        const Point2 F = s.b - s.a;
        xn = HomPoly::constant(-cross(F, uo - s.a));
        xd = HomPoly::linear(-F.y, F.x);
    }
    if (lower_vertex >= 0) {
        const Point2 b = p.vertex(lower_vertex) - uo;
        yn = HomPoly::linear(b.y, -b.x);
        yd = HomPoly::constant(1.0);
    } else {
        const Segment2 s = p.edge(lower_foot_edge);
        const Point2 F = s.b - s.a;
        yn = HomPoly::constant(-cross(F, uo - s.a));
        yd = HomPoly::linear(F.x, F.y);
    }
    const Segment2 es = p.edge(edge);
    const Point2 E = es.b - es.a;
    const HomPoly g = HomPoly::constant(cross(E, uo - es.a)) * xd * yd +
                      xn * yd * HomPoly::linear(-E.y, E.x) + yn * xd * HomPoly::linear(E.x, E.y);

    std::vector<double> out;
    const double tol = 1e-7 * p.diameter();
    for (double th : angle_roots(g)) {
        const Point2 d = frame_x(th), n = frame_y(th);
        const double X = xn(th) / xd(th), Y = yn(th) / yd(th);
        if (!std::isfinite(X) || !std::isfinite(Y)) continue;
        const Point2 r = uo + d * X + n * Y;
        if (point_segment_distance(r, es.a, es.b) > tol) continue;
        if (upper_vertex < 0) {
            const Segment2 s = p.edge(upper_foot_edge);
            if (point_segment_distance(uo + d * X, s.a, s.b) > tol || X > 0) continue;
        }
        if (lower_vertex < 0) {
            const Segment2 s = p.edge(lower_foot_edge);
            if (point_segment_distance(uo + n * Y, s.a, s.b) > tol || Y > 0) continue;
        }
        out.push_back(th);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {
enum CandKind { kAlign = 0, kCircle = 1, kFootList = 2, kFirstHinge = 3, kLastHinge = 4 };
enum Cls { kClsRay = 0, kClsShift = 1, kClsStep = 2 };
constexpr double kGroupTol = 1e-9;
}  // namespace

StaircaseEngine::StaircaseEngine(const PolygonShape& p, const EventMap& em, const std::vector<Alignment>& table,
                                 int u, double begin, double end)
    : p_(p), em_(em), table_(table), u_(u), begin_(begin), end_(end) {
    const double eps_angle = std::min(1e-7, 0.25 * (end_ - begin_));
    now_ = begin_ + eps_angle;
    end_ = end_ - eps_angle;
    for (const Alignment& a : table_) {
        const double t = unwrap(a.theta);
        if (t > now_ && t <= end_) {
            Alignment b = a;
            b.theta = t;
            aligned_.push_back(b);
        }
    }
    std::sort(aligned_.begin(), aligned_.end(),
              [](const Alignment& a, const Alignment& b) { return a.theta < b.theta; });
    marked_.assign(p.vertex_count(), 0);
    state_ = build_staircase(p_, u_, now_);
    schedule_after_rebuild(StaircaseState{});
    // The start sits next to an incident edge, where feet may still read as
    // vertex hits; settle on the structure midway to the first candidate.
    const double first = std::min(peek(), end_);
    if (first > now_) {
        StaircaseState old = state_;
        rebuild(0.5 * (now_ + first));
        if (!state_.same_structure(old)) schedule_after_rebuild(old);
    }
}

double StaircaseEngine::unwrap(double theta) const { return begin_ + normalize_angle(theta - begin_); }

void StaircaseEngine::push(double theta, int cls, int kind, int a, int b) {
    const double t = unwrap(theta);
    if (t <= now_ || t > end_) return;
    std::uint64_t stamp = kind == kFirstHinge ? first_stamp_ : (kind == kLastHinge ? last_stamp_ : 0);
    heap_.push({t, cls, kind, a, b, stamp});
    ++candidates_;
}

double StaircaseEngine::peek() const {
    double t = std::numeric_limits<double>::infinity();
    if (!heap_.empty()) t = heap_.top().theta;
    if (next_align_ < aligned_.size()) t = std::min(t, aligned_[next_align_].theta);
    return t;
}

bool StaircaseEngine::relevant(const Candidate& c) const {
    switch (c.kind) {
        case kAlign: return marked_[c.a] || marked_[c.b];
        case kCircle:
            for (const Step& s : state_.steps)
                if (state_.extremal[s.upper].vertex == c.a && state_.extremal[s.lower].vertex == c.b &&
                    state_.extremal[s.upper].kind == Extremal::Kind::Tip &&
                    state_.extremal[s.lower].kind == Extremal::Kind::Tip)
                    return true;
            return false;
        case kFootList:
            return c.b == 0 ? state_.eta.edge == c.a : state_.delta.edge == c.a;
        case kFirstHinge: return c.stamp == first_stamp_;
        case kLastHinge: return c.stamp == last_stamp_;
    }
    return false;
}

void StaircaseEngine::rebuild(double theta) {
    StaircaseState s = build_staircase(p_, u_, theta);
    state_ = std::move(s);
}

void StaircaseEngine::schedule_after_rebuild(const StaircaseState& old) {
    std::fill(marked_.begin(), marked_.end(), 0);
    marked_[u_] = 1;
    for (const Extremal& e : state_.extremal)
        if (e.vertex >= 0) marked_[e.vertex] = 1;
    // Edges along the chain turn horizontal or vertical at their endpoints'
    // alignments, which swaps hinges and oblique runs.
    for (int e : state_.chain_edge)
        if (e >= 0) marked_[e] = marked_[p_.next(e)] = 1;
    for (int e : {state_.eta.edge, state_.delta.edge})
        if (e >= 0) marked_[e] = marked_[p_.next(e)] = 1;

    auto had_step = [&](int a, int b) {
        for (const Step& s : old.steps)
            if (old.extremal[s.upper].vertex == a && old.extremal[s.lower].vertex == b &&
                old.extremal[s.upper].kind == Extremal::Kind::Tip && old.extremal[s.lower].kind == Extremal::Kind::Tip)
                return true;
        return false;
    };
    for (const Step& s : state_.steps) {
        const Extremal& a = state_.extremal[s.upper];
        const Extremal& b = state_.extremal[s.lower];
        if (a.kind != Extremal::Kind::Tip || b.kind != Extremal::Kind::Tip) continue;
        if (had_step(a.vertex, b.vertex)) continue;
        auto it = em_.circle.find({a.vertex, b.vertex});
        if (it == em_.circle.end()) continue;
        for (const CircleEntry& ce : it->second.crossings) push(ce.theta, kClsStep, kCircle, a.vertex, b.vertex);
    }

    if (state_.eta.edge >= 0 && (old.extremal.empty() || old.eta.edge != state_.eta.edge)) {
        auto it = em_.foot.find({u_, state_.eta.edge});
        if (it != em_.foot.end())
            for (const FootEntry& fe : it->second)
                if (fe.ray == FootEntry::Ray::DeltaOfEta) push(fe.theta, kClsShift, kFootList, state_.eta.edge, 0);
    }
    if (state_.delta.edge >= 0 && (old.extremal.empty() || old.delta.edge != state_.delta.edge)) {
        auto it = em_.foot.find({u_, state_.delta.edge});
        if (it != em_.foot.end())
            for (const FootEntry& fe : it->second)
                if (fe.ray == FootEntry::Ray::EtaOfDelta) push(fe.theta, kClsShift, kFootList, state_.delta.edge, 1);
    }

    // First and last steps have a moving end (a foot); their hinge events
    // come from closed-form trigonometric polynomials.
    auto end_signature = [](const StaircaseState& s, bool first) {
        if (s.steps.empty()) return std::tuple<int, int, int, int>{-9, -9, -9, -9};
        const Step& st = first ? s.steps.front() : s.steps.back();
        const Extremal& a = s.extremal[st.upper];
        const Extremal& b = s.extremal[st.lower];
        return std::tuple<int, int, int, int>{a.kind == Extremal::Kind::Tip ? a.vertex : -1,
                                              a.kind == Extremal::Kind::EtaFoot ? a.edge : -1,
                                              b.kind == Extremal::Kind::Tip ? b.vertex : -1,
                                              b.kind == Extremal::Kind::DeltaFoot ? b.edge : -1};
    };
    for (int which = 0; which < 2; ++which) {
        const bool first = which == 0;
        const auto sig = end_signature(state_, first);
        if (!old.extremal.empty() && sig == end_signature(old, first)) continue;
        if (first)
            ++first_stamp_;
        else
            ++last_stamp_;
        const auto [av, ae, bv, be] = sig;
        if ((av < 0 && ae < 0) || (bv < 0 && be < 0)) continue;
        if (!first && state_.steps.size() == 1) continue;  // same step as the first
        for (int e = 0; e < p_.edge_count(); ++e)
            for (double th : hinge_line_events(p_, u_, av, ae, bv, be, e))
                push(th, kClsStep, first ? kFirstHinge : kLastHinge, e, 0);
    }
}

void StaircaseEngine::classify(const StaircaseState& old, double theta, std::vector<EventRecord>* records) const {
    if (records == nullptr) return;
    EventRecord r;
    r.theta = theta;
    const auto ot = old.tips(), nt = state_.tips();
    std::vector<int> removed, added;
    for (int v : ot)
        if (std::find(nt.begin(), nt.end(), v) == nt.end()) removed.push_back(v);
    for (int v : nt)
        if (std::find(ot.begin(), ot.end(), v) == ot.end()) added.push_back(v);
    r.vertices = removed;
    r.vertices.insert(r.vertices.end(), added.begin(), added.end());
    const bool feet_changed = old.eta.edge != state_.eta.edge || old.eta.vertex != state_.eta.vertex ||
                              old.delta.edge != state_.delta.edge || old.delta.vertex != state_.delta.vertex;
    if (feet_changed) {
        r.kind = removed.size() + added.size() > 1 ? EventRecord::Kind::Ray : EventRecord::Kind::Shift;
        r.edges = {old.eta.edge, state_.eta.edge, old.delta.edge, state_.delta.edge};
    } else if (removed.empty() && added.empty()) {
        r.kind = EventRecord::Kind::HingeOblique;
        for (std::size_t i = 0; i < state_.steps.size() && i < old.steps.size(); ++i)
            if (state_.steps[i].oblique_edge != old.steps[i].oblique_edge || state_.steps[i].kind != old.steps[i].kind)
                r.edges.push_back(std::max(state_.steps[i].oblique_edge, old.steps[i].oblique_edge));
    } else if (removed.size() == 1 && added.empty()) {
        const bool at_end = !ot.empty() && (removed[0] == ot.front() || removed[0] == ot.back());
        r.kind = at_end ? EventRecord::Kind::TipVanish : EventRecord::Kind::StepMerge;
    } else if (added.size() == 1 && removed.empty()) {
        r.kind = EventRecord::Kind::StepSplit;
    } else {
        r.kind = EventRecord::Kind::Ray;
    }
    records->push_back(std::move(r));
}

StaircaseEngine::Candidate StaircaseEngine::pop_next() {
    const double t = peek();
    if (next_align_ < aligned_.size() && aligned_[next_align_].theta <= t) {
        const Alignment& a = aligned_[next_align_++];
        return {a.theta, kClsStep, kAlign, a.p, a.q, 0};
    }
    const Candidate c = heap_.top();
    heap_.pop();
    return c;
}

bool StaircaseEngine::step(std::vector<EventRecord>* records) { return step_until(end_, records); }

bool StaircaseEngine::step_until(double limit, std::vector<EventRecord>* records) {
    while (true) {
        const double t0 = peek();
        if (!(t0 <= limit)) return false;
        bool any = false;
        double tg = t0;
        while (true) {
            const double t = peek();
            if (!(t <= t0 + kGroupTol)) break;
            tg = std::max(tg, t);
            any = relevant(pop_next()) || any;
        }
        now_ = tg;  // candidates beyond the group stay schedulable
        if (!any) continue;
        // Rebuild midway to the next candidate: no event lies in between,
        // and the midpoint is farthest from the tolerance bands of both.
        StaircaseState old = state_;
        double at = 0.5 * (tg + std::min(peek(), end_ + 1e-7));
        rebuild(at);
        ++processed_;
        if (state_.same_structure(old)) continue;
        schedule_after_rebuild(old);
        // The new structure may carry events before the rebuild angle; pull
        // the rebuild back below them.
        while (peek() < at) {
            if (peek() <= tg + kGroupTol) {
                pop_next();
                continue;
            }
            const StaircaseState prev = state_;
            at = 0.5 * (tg + peek());
            rebuild(at);
            if (!state_.same_structure(prev)) schedule_after_rebuild(prev);
        }
        if (state_.same_structure(old)) continue;
        classify(old, tg, records);
        return true;
    }
}

void StaircaseEngine::advance_to(double theta, std::vector<EventRecord>* records) {
    const double t = std::min(theta, end_);
    while (step_until(t, records)) {
    }
}

}  // namespace maxrect
