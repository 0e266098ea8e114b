#include "maxrect/contacts.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace maxrect {

const char* side_name(Side s) {
    switch (s) {
        case Side::Top: return "top";
        case Side::Bottom: return "bottom";
        case Side::Left: return "left";
        case Side::Right: return "right";
    }
    return "?";
}

const char* corner_name(Corner c) {
    switch (c) {
        case Corner::BottomLeft: return "bottom-left";
        case Corner::BottomRight: return "bottom-right";
        case Corner::TopRight: return "top-right";
        case Corner::TopLeft: return "top-left";
    }
    return "?";
}

Contact Contact::side_contact(int v, Side s) {
    Contact c;
    c.kind = Kind::Side;
    c.side = s;
    c.vertex = v;
    return c;
}

Contact Contact::corner_on_edge(Corner k, int e) {
    Contact c;
    c.kind = Kind::Corner;
    c.corner = k;
    c.edge = e;
    return c;
}

Contact Contact::corner_at_vertex(Corner k, int v) {
    Contact c;
    c.kind = Kind::Corner;
    c.corner = k;
    c.vertex = v;
    return c;
}

std::string Contact::to_string() const {
    std::ostringstream os;
    if (kind == Kind::Side)
        os << "sc(v" << vertex << "@" << side_name(side) << ")";
    else if (edge >= 0)
        os << "cc(" << corner_name(corner) << "@e" << edge << ")";
    else
        os << "cc(" << corner_name(corner) << "@v" << vertex << ")";
    return os.str();
}

const char* type_name(DetType t) {
    static const char* names[] = {"A", "B1", "B2", "B3", "C1", "C2", "C3", "D1", "D2", "E1", "E2", "E3", "F1", "F2"};
    return names[static_cast<int>(t)];
}

char type_family(DetType t) { return type_name(t)[0]; }

std::string DetSet::to_string() const {
    std::ostringstream os;
    os << type_name(type) << "{";
    for (std::size_t i = 0; i < contacts.size(); ++i) os << (i ? "," : "") << contacts[i].to_string();
    os << "}";
    return os.str();
}

namespace {

bool is_top(Corner c) { return c == Corner::TopLeft || c == Corner::TopRight; }

struct Counts {
    int side = 0, corner = 0, corner_vertex = 0, top_corner = 0, bottom_corner = 0;
    bool top_side = false;
};

Counts count(const DetSet& z) {
    Counts c;
    for (const Contact& k : z.contacts) {
        if (k.kind == Contact::Kind::Side) {
            ++c.side;
            if (k.side == Side::Top) c.top_side = true;
        } else {
            ++c.corner;
            if (k.edge < 0) ++c.corner_vertex;
            if (is_top(k.corner))
                ++c.top_corner;
            else
                ++c.bottom_corner;
        }
    }
    return c;
}

}  // namespace

void check_template(const DetSet& z) {
    const Counts c = count(z);
    auto fail = [&](const char* why) {
        throw std::invalid_argument(std::string("malformed determining set ") + z.to_string() + ": " + why);
    };
    for (const Contact& k : z.contacts) {
        if (k.kind == Contact::Kind::Side && k.vertex < 0) fail("side contact without a vertex");
        if (k.kind == Contact::Kind::Corner && k.vertex < 0 && k.edge < 0) fail("corner contact without an element");
    }
    switch (type_family(z.type)) {
        case 'A':
            if (c.side != 0 || c.corner != 2 || c.corner_vertex != 2) fail("type A needs two corners at vertices");
            break;
        case 'F':
            if (c.side != 0 || c.corner < 3) fail("type F needs three or four corner contacts and no side contact");
            break;
        default:
            if (!c.top_side) fail("types B-E need a top side contact");
            if (z.contacts.size() < 3) fail("too few contacts");
            break;
    }
}

namespace {

constexpr int kXl = 0, kXr = 1, kYb = 2, kYt = 3;

std::array<int, 2> corner_index(Corner c) {
    switch (c) {
        case Corner::BottomLeft: return {kXl, kYb};
        case Corner::BottomRight: return {kXr, kYb};
        case Corner::TopRight: return {kXr, kYt};
        case Corner::TopLeft: return {kXl, kYt};
    }
    return {kXl, kYb};
}

// A linear function g(z) = a·z + c of the box coordinates z = (xl, xr, yb, yt).
struct Lin {
    Eigen::Vector4d a = Eigen::Vector4d::Zero();
    double c = 0.0;
    double at(const Eigen::Vector4d& z) const { return a.dot(z) + c; }
};

struct System {
    std::vector<Lin> eq;   // = 0
    std::vector<Lin> ineq; // >= 0, scaled to lengths
};

System build_system(const PolygonShape& p, const DetSet& z, const Frame& fr) {
    System s;
    auto var = [](int i, double k) {
        Lin l;
        l.a[i] = k;
        return l;
    };
    {
        Lin w = var(kXr, 1.0);
        w.a[kXl] = -1.0;
        s.ineq.push_back(w);
        Lin h = var(kYt, 1.0);
        h.a[kYb] = -1.0;
        s.ineq.push_back(h);
    }
    for (const Contact& k : z.contacts) {
        if (k.kind == Contact::Kind::Side) {
            const Point2 v = fr.to_frame(p.vertex(k.vertex));
            switch (k.side) {
                case Side::Top: {
                    Lin l = var(kYt, 1.0);
                    l.c = -v.y;
                    s.eq.push_back(l);
                    break;
                }
                case Side::Bottom: {
                    Lin l = var(kYb, 1.0);
                    l.c = -v.y;
                    s.eq.push_back(l);
                    break;
                }
                case Side::Left: {
                    Lin l = var(kXl, 1.0);
                    l.c = -v.x;
                    s.eq.push_back(l);
                    break;
                }
                case Side::Right: {
                    Lin l = var(kXr, 1.0);
                    l.c = -v.x;
                    s.eq.push_back(l);
                    break;
                }
            }
            const bool horizontal = k.side == Side::Top || k.side == Side::Bottom;
            const int lo = horizontal ? kXl : kYb, hi = horizontal ? kXr : kYt;
            const double coord = horizontal ? v.x : v.y;
            Lin a = var(lo, -1.0);
            a.c = coord;
            Lin b = var(hi, 1.0);
            b.c = -coord;
            s.ineq.push_back(a);
            s.ineq.push_back(b);
        } else {
            const auto [ix, iy] = corner_index(k.corner);
            if (k.edge < 0) {
                const Point2 w = fr.to_frame(p.vertex(k.vertex));
                Lin lx = var(ix, 1.0);
                lx.c = -w.x;
                Lin ly = var(iy, 1.0);
                ly.c = -w.y;
                s.eq.push_back(lx);
                s.eq.push_back(ly);
            } else {
                const Segment2 e = p.edge(k.edge);
                const Point2 a = fr.to_frame(e.a), b = fr.to_frame(e.b);
                const Point2 t = b - a;
                const double len = norm(t);
                // Unit-normal form of the supporting line.
                Lin l;
                l.a[ix] = -t.y / len;
                l.a[iy] = t.x / len;
                l.c = (t.y * a.x - t.x * a.y) / len;
                s.eq.push_back(l);
                // Stay on the segment: 0 <= (c - a)·t / |t| <= |t|.
                Lin lo;
                lo.a[ix] = t.x / len;
                lo.a[iy] = t.y / len;
                lo.c = -(a.x * t.x + a.y * t.y) / len;
                Lin hi = lo;
                hi.a = -hi.a;
                hi.c = len - lo.c;
                s.ineq.push_back(lo);
                s.ineq.push_back(hi);
            }
        }
    }
    return s;
}

double box_area(const Eigen::Vector4d& z) { return (z[kXr] - z[kXl]) * (z[kYt] - z[kYb]); }

}  // namespace

std::optional<RectSpec> realize_geometric(const PolygonShape& p, const DetSet& z, double theta) {
    const Frame fr(theta);
    const System s = build_system(p, z, fr);
    const double tol = p.eps();
    const double tight = 1e-3 * tol;  // segment and side-span bounds
    const int m = static_cast<int>(s.eq.size());
    Eigen::MatrixXd M(m, 4);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
        M.row(i) = s.eq[i].a.transpose();
        rhs[i] = -s.eq[i].c;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV | Eigen::ComputeThinU);
    svd.setThreshold(1e-10);
    const int rank = static_cast<int>(svd.rank());
    if (rank < 3) throw std::invalid_argument("not a determining set: " + z.to_string());
    const Eigen::Vector4d z0 = svd.solve(rhs);
    if (m > 0 && (M * z0 - rhs).cwiseAbs().maxCoeff() > 0.1 * tol) return std::nullopt;

    Eigen::Vector4d best = z0;
    if (rank == 3) {
        const Eigen::Vector4d k = svd.matrixV().col(3);
        double tlo = -std::numeric_limits<double>::infinity(), thi = std::numeric_limits<double>::infinity();
        for (const Lin& g : s.ineq) {
            const double g0 = g.at(z0), gk = g.a.dot(k);
            if (std::fabs(gk) < 1e-15) {
                if (g0 < -tight) return std::nullopt;
                continue;
            }
            const double t = -g0 / gk;
            if (gk > 0)
                tlo = std::max(tlo, t);
            else
                thi = std::min(thi, t);
        }
        if (!std::isfinite(tlo) || !std::isfinite(thi)) return std::nullopt;
        if (tlo > thi) {
            // Empty only by rounding: accept when every bound holds within tol.
            const double mid = 0.5 * (tlo + thi);
            for (const Lin& g : s.ineq)
                if (g.at(z0 + mid * k) < -tight) return std::nullopt;
            tlo = thi = mid;
        }
        // Area along the line is a quadratic in t.
        const double w0 = z0[kXr] - z0[kXl], wk = k[kXr] - k[kXl];
        const double h0 = z0[kYt] - z0[kYb], hk = k[kYt] - k[kYb];
        const double qa = wk * hk, qb = w0 * hk + h0 * wk;
        double tbest = tlo;
        double abest = box_area(z0 + tlo * k);
        const double ahi = box_area(z0 + thi * k);
        if (ahi > abest) {
            tbest = thi;
            abest = ahi;
        }
        if (qa < 0) {
            const double ts = -qb / (2 * qa);
            if (ts > tlo && ts < thi && box_area(z0 + ts * k) > abest) tbest = ts;
        }
        best = z0 + tbest * k;
    } else {
        for (const Lin& g : s.ineq)
            if (g.at(z0) < -tight) return std::nullopt;
    }
    const double w = best[kXr] - best[kXl], h = best[kYt] - best[kYb];
    if (w < -tol || h < -tol) return std::nullopt;
    return rect_from_frame_box(fr, best[kXl], std::max(best[kXr], best[kXl]), best[kYb],
                               std::max(best[kYt], best[kYb]));
}

std::optional<RectSpec> realize(const PolygonShape& p, const DetSet& z, double theta) {
    auto r = realize_geometric(p, z, theta);
    if (!r || r->width <= 0.0 || r->height <= 0.0) return std::nullopt;
    // Contacts touch the boundary exactly, so only rounding-level slack is
    // allowed; a looser band would let maximization push past the true
    // breaking configuration.
    if (!contains_rect(p, *r, 1e-3 * p.eps())) return std::nullopt;
    return r;
}

double area_at(const PolygonShape& p, const DetSet& z, double theta) {
    const auto r = realize_geometric(p, z, theta);
    return r ? r->area() : 0.0;
}

// ---------------------------------------------------------------------------

namespace {

double angle_between(Point2 a, Point2 b) { return std::atan2(std::fabs(cross(a, b)), dot(a, b)); }

const Contact* find_side(const DetSet& z, Side s) {
    for (const Contact& k : z.contacts)
        if (k.kind == Contact::Kind::Side && k.side == s) return &k;
    return nullptr;
}

const Contact* find_edge_corner(const DetSet& z) {
    for (const Contact& k : z.contacts)
        if (k.on_edge()) return &k;
    return nullptr;
}

}  // namespace

std::optional<AngleParams> angle_params(const PolygonShape& p, const DetSet& z, double theta) {
    if (z.type != DetType::B1 && z.type != DetType::B2 && z.type != DetType::B3) return std::nullopt;
    const auto r = realize_geometric(p, z, theta);
    if (!r) return std::nullopt;
    const Frame fr(theta);
    const Contact* top = find_side(z, Side::Top);
    if (!top) return std::nullopt;
    const Point2 u = fr.to_frame(p.vertex(top->vertex));
    const Contact* right = find_side(z, Side::Right);
    const Contact* left = find_side(z, Side::Left);
    const Contact* cc = find_edge_corner(z);
    // Mirror so the side contact v is on the right; sx flips frame x.
    double sx = 1.0;
    const Contact* vc = right;
    if (z.type != DetType::B1 && cc && cc->corner == Corner::BottomRight) {
        sx = -1.0;
        vc = left;
    }
    if (!vc) return std::nullopt;
    auto F = [&](Point2 q) { return Point2{sx * q.x, q.y}; };
    const Point2 uf = F(u);
    const Point2 v = F(fr.to_frame(p.vertex(vc->vertex)));
    const Point2 d{1.0, 0.0};
    AngleParams a;
    a.uv = dist(uf, v);
    a.gamma = std::atan2(uf.y - v.y, v.x - uf.x);
    if (z.type == DetType::B1) {
        const Contact* pl = find_side(z, Side::Left);
        const Contact* qb = find_side(z, Side::Bottom);
        if (!pl || !qb) return std::nullopt;
        const Point2 pp = fr.to_frame(p.vertex(pl->vertex)), q = fr.to_frame(p.vertex(qb->vertex));
        a.up = dist(uf, pp);
        a.qv = dist(q, v);
        a.alpha = angle_between(pp - uf, d) - a.gamma;
        a.beta = std::atan2(v.y - q.y, v.x - q.x) + a.gamma;
        return a;
    }
    const Frame& f = fr;
    const Point2 c = F(f.to_frame(rect_corners(*r)[sx > 0 ? 0 : 1]));  // bottom corner on the edge
    if (z.type == DetType::B3) {
        a.uc = dist(uf, c);
        a.alpha = angle_between(c - uf, d) - a.gamma;
        return a;
    }
    // B2: w is where the line uv meets the edge's supporting line, beyond v.
    const Contact* qb = find_side(z, Side::Bottom);
    if (!qb || !cc) return std::nullopt;
    const Point2 q = F(fr.to_frame(p.vertex(qb->vertex)));
    const Segment2 e = p.edge(cc->edge);
    const Point2 ea = F(fr.to_frame(e.a)), eb = F(fr.to_frame(e.b));
    Point2 w;
    if (!line_intersection(uf, v, ea, eb, w)) return std::nullopt;
    if (dot(w - v, v - uf) <= 0.0) return std::nullopt;  // w above u: formula not stated
    a.uq = dist(uf, q);
    a.uw = dist(uf, w);
    a.vw = dist(v, w);
    a.beta = angle_between(q - uf, d) - a.gamma;
    a.alpha = a.gamma - std::atan2(c.y - w.y, w.x - c.x);
    return a;
}

std::optional<double> area_formula(const PolygonShape& p, const DetSet& z, double theta) {
    const auto ap = angle_params(p, z, theta);
    if (!ap) return std::nullopt;
    const AngleParams& a = *ap;
    switch (z.type) {
        case DetType::B1:
            return (a.uv * std::cos(a.gamma) + a.up * std::cos(kPi - (a.alpha + a.gamma))) *
                   (a.uv * std::sin(a.gamma) + a.qv * std::cos(kHalfPi - (a.beta - a.gamma)));
        case DetType::B2:
            return a.uq * std::sin(a.beta + a.gamma) *
                   (1.0 / std::tan(a.gamma - a.alpha) * (a.uw * std::sin(a.gamma) - a.uq * std::sin(a.beta + a.gamma)) -
                    a.vw * std::cos(a.gamma));
        case DetType::B3:
            return a.uc * std::sin(a.alpha + a.gamma) *
                   (a.uc * std::cos(kPi - (a.alpha + a.gamma)) + a.uv * std::cos(a.gamma));
        default: return std::nullopt;
    }
}

// ---------------------------------------------------------------------------

FeasibleInterval feasible_interval(const PolygonShape& p, const DetSet& z, double theta_event, double lo_bound,
                                   double hi_bound) {
    FeasibleInterval j;
    auto ok = [&](double t) { return realize(p, z, t).has_value(); };
    if (!ok(theta_event)) {
        j.lo = 1.0;
        j.hi = 0.0;
        j.reason = "infeasible at event";
        return j;
    }
    auto expand = [&](double dir, double bound) {
        double good = theta_event, step = 1e-4;
        while (true) {
            const double t = theta_event + dir * step;
            if (dir * (t - bound) >= 0) {
                if (ok(bound)) return bound;
                break;
            }
            if (!ok(t)) {
                double bad = t;
                for (int i = 0; i < 60 && std::fabs(bad - good) > 1e-13; ++i) {
                    const double mid = 0.5 * (good + bad);
                    (ok(mid) ? good : bad) = mid;
                }
                return good;
            }
            good = t;
            step *= 2;
        }
        double bad = bound;
        for (int i = 0; i < 60 && std::fabs(bad - good) > 1e-13; ++i) {
            const double mid = 0.5 * (good + bad);
            (ok(mid) ? good : bad) = mid;
        }
        return good;
    };
    j.lo = expand(-1.0, lo_bound);
    j.hi = expand(1.0, hi_bound);
    j.reason = "bisection";
    return j;
}

std::vector<Maximum> maximize_area(const PolygonShape& p, const DetSet& z, const FeasibleInterval& j, int samples) {
    std::vector<Maximum> out;
    if (j.empty()) return out;
    auto f = [&](double t) { return area_at(p, z, t); };
    out.push_back({j.lo, f(j.lo)});
    if (j.hi > j.lo) {
        for (const Maximum& m : local_maxima(f, j.lo, j.hi, samples, 1e-12))
            if (m.x > j.lo && m.x < j.hi) out.push_back(m);
        out.push_back({j.hi, f(j.hi)});
    }
    std::sort(out.begin(), out.end(), [](const Maximum& a, const Maximum& b) { return a.x < b.x; });
    return out;
}

std::vector<Contact> contacts_of(const PolygonShape& p, const RectSpec& r, double tol) {
    if (tol < 0) tol = 100 * p.eps();
    const Frame fr(r.theta);
    const Point2 c = fr.to_frame(r.center);
    const double xl = c.x - 0.5 * r.width, xr = c.x + 0.5 * r.width;
    const double yb = c.y - 0.5 * r.height, yt = c.y + 0.5 * r.height;
    std::vector<Contact> out;
    for (int v = 0; v < p.vertex_count(); ++v) {
        if (!p.is_reflex(v)) continue;
        const Point2 f = fr.to_frame(p.vertex(v));
        const bool in_x = f.x > xl + tol && f.x < xr - tol;
        const bool in_y = f.y > yb + tol && f.y < yt - tol;
        if (in_x && std::fabs(f.y - yt) <= tol) out.push_back(Contact::side_contact(v, Side::Top));
        if (in_x && std::fabs(f.y - yb) <= tol) out.push_back(Contact::side_contact(v, Side::Bottom));
        if (in_y && std::fabs(f.x - xl) <= tol) out.push_back(Contact::side_contact(v, Side::Left));
        if (in_y && std::fabs(f.x - xr) <= tol) out.push_back(Contact::side_contact(v, Side::Right));
    }
    const auto corners = rect_corners(r);
    const Corner order[4] = {Corner::BottomLeft, Corner::BottomRight, Corner::TopRight, Corner::TopLeft};
    for (int k = 0; k < 4; ++k) {
        int at_vertex = -1;
        for (int v = 0; v < p.vertex_count() && at_vertex < 0; ++v)
            if (dist(corners[k], p.vertex(v)) <= tol) at_vertex = v;
        if (at_vertex >= 0) {
            out.push_back(Contact::corner_at_vertex(order[k], at_vertex));
            continue;
        }
        for (int e = 0; e < p.edge_count(); ++e) {
            const Segment2 s = p.edge(e);
            if (point_segment_distance(corners[k], s.a, s.b) <= tol) {
                out.push_back(Contact::corner_on_edge(order[k], e));
                break;
            }
        }
    }
    return out;
}

DetType classify_contacts(const std::vector<Contact>& contacts) {
    int tc = 0, bc = 0, sides = 0, at_vertex = 0;
    bool top = false, bottom = false;
    for (const Contact& k : contacts) {
        if (k.kind == Contact::Kind::Side) {
            ++sides;
            top = top || k.side == Side::Top;
            bottom = bottom || k.side == Side::Bottom;
        } else {
            (is_top(k.corner) ? tc : bc) += 1;
            if (k.edge < 0) ++at_vertex;
        }
    }
    using T = DetType;
    if (sides == 0) {
        if (tc + bc == 2 && at_vertex == 2) return T::A;
        return tc + bc >= 4 ? T::F2 : T::F1;
    }
    if (!top) return T::B1;
    if (tc >= 2) return bottom ? T::D1 : T::D2;
    if (tc == 1) {
        if (bc >= 2) return T::E3;
        if (bc == 1) return bottom ? T::C3 : T::C1;
        return T::C2;
    }
    if (bc >= 2) return bottom ? T::E2 : T::E1;
    if (bc == 1) return bottom ? T::B2 : T::B3;
    return T::B1;
}

DetSet identify(const PolygonShape& p, const RectSpec& r, double* frame_theta) {
    RectSpec q = r;
    std::vector<Contact> first;
    for (int turn = 0; turn < 4; ++turn) {
        auto cs = contacts_of(p, q);
        if (turn == 0) first = cs;
        const bool any_side = std::any_of(cs.begin(), cs.end(), [](const Contact& k) { return k.kind == Contact::Kind::Side; });
        const bool top = std::any_of(cs.begin(), cs.end(), [](const Contact& k) {
            return k.kind == Contact::Kind::Side && k.side == Side::Top;
        });
        if (!any_side || top) {
            if (frame_theta) *frame_theta = q.theta;
            return {classify_contacts(cs), cs};
        }
        q.theta = q.theta + kHalfPi;
        std::swap(q.width, q.height);
    }
    if (frame_theta) *frame_theta = r.theta;
    return {classify_contacts(first), first};
}

std::vector<DetType> enumerate_bcs(DetType t) {
    using T = DetType;
    switch (t) {
        case T::B1: return {T::B2, T::C2};
        case T::B2: return {T::E2, T::C3};
        case T::B3: return {T::B2, T::E1, T::C1};
        case T::C1: return {T::C3, T::E3, T::D2};
        case T::C2: return {T::C3, T::D1};
        case T::C3: return {T::E3, T::D2};
        case T::D1: return {T::D2};  // the bottom-right corner BC belongs to E3
        case T::E1: return {T::E2, T::E3};
        case T::E2: return {T::E3};
        case T::A:
        case T::D2:
        case T::E3:
        case T::F1:  // handed to D1/E3 (side contact) and F2 (corner contact)
        case T::F2:  // with a side contact it is the last E3 configuration
            return {};
    }
    return {};
}

}  // namespace maxrect
