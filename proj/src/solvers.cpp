#include "maxrect/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <thread>

#include "maxrect/numeric.hpp"
#include "maxrect/staircase.hpp"

namespace maxrect {

const char* origin_name(Candidate::Origin o) {
    switch (o) {
        case Candidate::Origin::Maximal: return "maximal";
        case Candidate::Origin::Breaking: return "breaking";
        case Candidate::Origin::Endpoint: return "endpoint";
    }
    return "?";
}

void SolveStats::merge(const SolveStats& o) {
    for (std::size_t i = 0; i < family.size(); ++i) {
        family[i].events += o.family[i].events;
        family[i].tested += o.family[i].tested;
        family[i].accepted += o.family[i].accepted;
        family[i].optimal += o.family[i].optimal;
    }
}

// ---------------------------------------------------------------------------
// Type A

Candidates solve_type_a(const PolygonShape& p, SolveStats* stats) {
    Candidates out;
    const int n = p.vertex_count();
    for (int i = 0; i < n; ++i) {
        if (p.is_reflex(i)) continue;
        for (int j = i + 1; j < n; ++j) {
            if (p.is_reflex(j)) continue;
            const Point2 a = p.vertex(i), b = p.vertex(j);
            RectSpec r;
            r.center = midpoint(a, b);
            r.theta = normalize_angle(direction_angle(b - a) - kPi / 4);
            r.width = r.height = dist(a, b) / std::sqrt(2.0);
            if (stats) ++(*stats)['A'].tested;
            if (!contains_rect(p, r)) continue;
            if (stats) ++(*stats)['A'].accepted;
            out.push_back({r,
                           {DetType::A,
                            {Contact::corner_at_vertex(Corner::BottomLeft, i),
                             Contact::corner_at_vertex(Corner::TopRight, j)}},
                           Candidate::Origin::Maximal});
        }
    }
    if (stats) (*stats)['A'].events += static_cast<std::size_t>(n) * (n - 1) / 2;
    return out;
}

// ---------------------------------------------------------------------------
// Reflex vertex on the top side

namespace {

struct TopBox {
    double area = 0.0;
    double xl = 0.0, xr = 0.0, yb = 0.0;  // relative to u in the frame
};

// Largest box [xl, xr] x [yb, 0] (relative to u) in P at θ with xl <= 0 <= xr.
// The left half is bounded by the lower-left staircase and the right half by
// the lower-right one (the lower-left staircase at θ + π/2).
bool eval_top(const PolygonShape& p, int u, double theta, TopBox& out) {
    StaircaseState sw, se;
    try {
        sw = build_staircase(p, u, theta);
        se = build_staircase(p, u, theta + kHalfPi);
    } catch (const std::invalid_argument&) {
        return false;
    }
    if (sw.chain.empty() || se.chain.empty()) return false;
    const double ylo = std::max(sw.chain.back().y, se.chain.front().x);
    out = TopBox{};
    if (!(ylo < 0.0)) return true;
    auto L = [&](double y) { return sw.left_extent(y); };
    auto R = [&](double y) { return -se.lower_extent(y); };
    std::vector<double> ys{ylo, 0.0};
    for (const Point2& c : sw.chain)
        if (c.y > ylo && c.y < 0.0) ys.push_back(c.y);
    for (const Point2& c : se.chain)
        if (c.x > ylo && c.x < 0.0) ys.push_back(c.x);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    auto consider = [&](double y) {
        const double xl = L(y), xr = R(y);
        const double a = (xr - xl) * (-y);
        if (a > out.area) out = {a, xl, xr, y};
    };
    for (double y : ys) consider(y);
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        const double y0 = ys[i], y1 = ys[i + 1];
        if (y1 - y0 <= 1e-15 * p.diameter()) continue;
        // Width is linear inside the piece; area −y·W(y) is a concave quadratic.
        const double ya = y0 + (y1 - y0) / 3, yc = y0 + 2 * (y1 - y0) / 3;
        const double wa = R(ya) - L(ya), wc = R(yc) - L(yc);
        const double w1 = (wc - wa) / (yc - ya), w0 = wa - w1 * ya;
        if (w1 > 0) {
            const double ys_ = -w0 / (2 * w1);
            if (ys_ > y0 && ys_ < y1) consider(ys_);
        }
    }
    return true;
}

RectSpec top_rect(const PolygonShape& p, int u, double theta, const TopBox& b) {
    const Frame fr(theta);
    const Point2 uf = fr.to_frame(p.vertex(u));
    return rect_from_frame_box(fr, uf.x + b.xl, uf.x + b.xr, uf.y + b.yb, uf.y);
}

void sweep_vertex(const PolygonShape& p, const EventMap& em, const std::vector<Alignment>& table, int u,
                  Candidates& out, SolveStats& stats, std::vector<EventRecord>* records) {
    const AngleInterval I = top_contact_interval(p, u);
    if (I.length <= 1e-12) return;
    std::vector<double> cuts{I.begin, I.end()};
    std::vector<EventRecord> local;
    std::size_t processed = 0;
    {
        StaircaseEngine sw(p, em, table, u, I.begin, I.end());
        while (sw.step(&local)) {}
        processed += sw.processed_events();
    }
    const std::size_t n_sw = local.size();
    {
        StaircaseEngine se(p, em, table, u, I.begin + kHalfPi, I.end() + kHalfPi);
        while (se.step(&local)) {}
        processed += se.processed_events();
    }
    for (std::size_t i = 0; i < local.size(); ++i) {
        double t = local[i].theta - (i >= n_sw ? kHalfPi : 0.0);
        if (t > I.begin && t < I.end()) cuts.push_back(t);
    }
    if (records) records->insert(records->end(), local.begin(), local.end());
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> merged;
    for (double t : cuts)
        if (merged.empty() || t - merged.back() > 1e-11) merged.push_back(t);
    if (merged.back() < I.end()) merged.back() = I.end();

    auto area = [&](double t) {
        TopBox b;
        if (!eval_top(p, u, t, b)) {
            // The interval ends sit on the quadrant boundary; step inside.
            const double in = t <= I.begin ? I.begin + 1e-12 : (t >= I.end() ? I.end() - 1e-12 : t + 1e-12);
            if (!eval_top(p, u, in, b)) return 0.0;
        }
        return b.area;
    };
    for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
        const double t0 = merged[k], t1 = merged[k + 1];
        for (const Maximum& m : local_maxima(area, t0, t1, 8, 1e-12)) {
            if (!(m.value > 0.0)) continue;
            TopBox b;
            double t = m.x;
            if (!eval_top(p, u, t, b)) {
                t = t <= I.begin ? I.begin + 1e-12 : (t >= I.end() ? I.end() - 1e-12 : t + 1e-12);
                if (!eval_top(p, u, t, b)) continue;
            }
            ++stats['B'].tested;
            Candidate c;
            c.rect = top_rect(p, u, t, b);
            if (!contains_rect(p, c.rect)) continue;
            c.det_set = identify(p, c.rect);
            const bool end = std::fabs(m.x - I.begin) < 1e-11 || std::fabs(m.x - I.end()) < 1e-11;
            const bool cut = std::fabs(m.x - t0) < 1e-11 || std::fabs(m.x - t1) < 1e-11;
            c.origin = end ? Candidate::Origin::Endpoint : (cut ? Candidate::Origin::Breaking : Candidate::Origin::Maximal);
            const char fam = type_family(c.det_set.type);
            ++stats[fam == 'A' || fam == 'F' ? 'B' : fam].accepted;
            out.push_back(std::move(c));
        }
    }
    stats['B'].events += processed;
}

bool family_wanted(const std::string& types, const DetSet& z) {
    return types.find(type_family(z.type)) != std::string::npos;
}

}  // namespace

Candidates solve_reflex(const PolygonShape& p, const EventMap& em, const SolveOptions& opt, SolveStats* stats) {
    std::vector<int> reflex;
    for (int v = 0; v < p.vertex_count(); ++v)
        if (p.is_reflex(v)) reflex.push_back(v);
    const auto table = alignment_table(p);
    std::vector<Candidates> per(reflex.size());
    std::vector<SolveStats> st(reflex.size());
    std::vector<std::vector<EventRecord>> rec(reflex.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < reflex.size();)
            sweep_vertex(p, em, table, reflex[i], per[i], st[i], opt.trace ? &rec[i] : nullptr);
    };
    const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(reflex.size())));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    Candidates out;
    for (std::size_t i = 0; i < reflex.size(); ++i) {
        if (stats) stats->merge(st[i]);
        if (opt.trace) write_trace(*opt.trace, reflex[i], rec[i]);
        for (auto& c : per[i])
            if (family_wanted(opt.types, c.det_set) || (type_family(c.det_set.type) == 'A' && opt.types.find('B') != std::string::npos) ||
                (type_family(c.det_set.type) == 'F' && opt.types.find('B') != std::string::npos))
                out.push_back(std::move(c));
    }
    return out;
}

Candidates solve_type_b(const PolygonShape& p, const EventMap& em) {
    SolveOptions o;
    o.types = "B";
    return solve_reflex(p, em, o);
}

Candidates solve_type_cd(const PolygonShape& p, const EventMap& em) {
    SolveOptions o;
    o.types = "CD";
    return solve_reflex(p, em, o);
}

Candidates solve_type_e(const PolygonShape& p, const EventMap& em) {
    SolveOptions o;
    o.types = "E";
    return solve_reflex(p, em, o);
}

// ---------------------------------------------------------------------------
// Type F

namespace {

struct FrameVerts {
    std::vector<Point2> v;
    explicit FrameVerts(const PolygonShape& p, const Frame& fr) {
        v.reserve(p.vertex_count());
        for (const Point2& q : p.points()) v.push_back(fr.to_frame(q));
    }
};

// First edge crossed by the rightward (dir_x) or downward ray from c.
int first_hit(const PolygonShape& p, const FrameVerts& g, Point2 c, bool rightward, int skip, double tol) {
    int best = -1;
    double bt = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.edge_count(); ++i) {
        if (i == skip) continue;
        const Point2 a = g.v[i], b = g.v[p.next(i)];
        if (rightward) {
            if ((a.y > c.y) == (b.y > c.y)) continue;
            const double x = a.x + (c.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x > c.x + tol && x - c.x < bt) {
                bt = x - c.x;
                best = i;
            }
        } else {
            if ((a.x > c.x) == (b.x > c.x)) continue;
            const double y = a.y + (c.x - a.x) * (b.y - a.y) / (b.x - a.x);
            if (y < c.y - tol && c.y - y < bt) {
                bt = c.y - y;
                best = i;
            }
        }
    }
    return best;
}

std::string key_of(const DetSet& z) { return z.to_string(); }

// Corner-only sets around a breaking configuration: a corner at a vertex may
// continue along either incident edge, and a fourth corner contact makes
// both the four-corner set and its three-corner subsets candidates.
std::vector<DetSet> corner_sets_near(const PolygonShape& p, const std::vector<Contact>& contacts) {
    std::vector<std::pair<Corner, std::vector<int>>> options;
    for (const Contact& c : contacts) {
        if (c.kind != Contact::Kind::Corner) continue;
        std::vector<int> edges = c.on_edge() ? std::vector<int>{c.edge} : std::vector<int>{c.vertex, p.prev(c.vertex)};
        auto it = std::find_if(options.begin(), options.end(), [&](const auto& o) { return o.first == c.corner; });
        if (it == options.end()) options.push_back({c.corner, edges});
        else
            for (int e : edges)
                if (std::find(it->second.begin(), it->second.end(), e) == it->second.end()) it->second.push_back(e);
    }
    std::vector<DetSet> out;
    if (options.size() < 3) return out;
    const std::size_t m = options.size();
    std::vector<std::size_t> pick(m, 0);
    for (;;) {
        std::vector<Contact> all;
        for (std::size_t i = 0; i < m; ++i) all.push_back(Contact::corner_on_edge(options[i].first, options[i].second[pick[i]]));
        // Two corners on one edge pin θ; such sets do not continue.
        auto shares_edge = [](const std::vector<Contact>& cs) {
            for (std::size_t a = 0; a < cs.size(); ++a)
                for (std::size_t b = a + 1; b < cs.size(); ++b)
                    if (cs[a].edge == cs[b].edge) return true;
            return false;
        };
        if (m >= 4 && !shares_edge(all)) out.push_back({DetType::F2, all});
        for (std::size_t drop = 0; drop < m; ++drop) {
            if (m == 3 && drop > 0) break;
            DetSet z{DetType::F1, {}};
            for (std::size_t i = 0; i < m; ++i)
                if (m == 3 || i != drop) z.contacts.push_back(all[i]);
            if (!shares_edge(z.contacts)) out.push_back(std::move(z));
        }
        std::size_t i = 0;
        while (i < m && ++pick[i] == options[i].second.size()) pick[i++] = 0;
        if (i == m) break;
    }
    return out;
}

// Corner-only sets with the top-left corner on an edge, found at θ.
template <class Sink>
void enumerate_f_at(const PolygonShape& p, double theta, Sink&& sink) {
    const Frame fr(theta);
    const FrameVerts g(p, fr);
    const double tol = p.eps();
    const int n = p.vertex_count();
    std::vector<double> s;
    for (int e = 0; e < p.edge_count(); ++e) {
        const Point2 a = g.v[e], b = g.v[p.next(e)];
        const Point2 t = b - a;
        const double len = norm(t);
        if (len <= tol) continue;
        // The lower-right quadrant at the corner must open into P.
        if (t.x > 1e-12 * len || t.y > 1e-12 * len) continue;
        s.assign({0.0, 1.0});
        for (int v = 0; v < n; ++v) {
            const Point2 q = g.v[v];
            if ((a.y - q.y) * (b.y - q.y) < 0) s.push_back((q.y - a.y) / t.y);
            if ((a.x - q.x) * (b.x - q.x) < 0) s.push_back((q.x - a.x) / t.x);
        }
        std::sort(s.begin(), s.end());
        for (std::size_t k = 0; k + 1 < s.size(); ++k) {
            const double s0 = s[k], s1 = s[k + 1];
            if (s1 - s0 < 1e-12) continue;
            const Point2 c = lerp(a, b, 0.5 * (s0 + s1));
            const int er = first_hit(p, g, c, true, e, tol);
            const int ed = first_hit(p, g, c, false, e, tol);
            if (er < 0 || ed < 0) continue;
            DetSet z{DetType::F1,
                     {Contact::corner_on_edge(Corner::TopLeft, e), Contact::corner_on_edge(Corner::TopRight, er),
                      Contact::corner_on_edge(Corner::BottomLeft, ed)}};
            std::optional<RectSpec> r;
            try {
                r = realize_geometric(p, z, theta);
            } catch (const std::invalid_argument&) {
                continue;
            }
            if (r && r->width > 0 && r->height > 0 && contains_rect(p, *r)) {
                sink(z, r->area());
                continue;
            }
            // Blocked below-right: the bottom-right corner rests on an edge
            // crossed by its path as the top-left corner slides.
            const Point2 ra = g.v[er], rb = g.v[p.next(er)], da = g.v[ed], db = g.v[p.next(ed)];
            if (std::fabs(rb.y - ra.y) <= tol || std::fabs(db.x - da.x) <= tol) continue;
            auto br = [&](double sv) {
                const Point2 q = lerp(a, b, sv);
                return Point2{ra.x + (q.y - ra.y) * (rb.x - ra.x) / (rb.y - ra.y),
                              da.y + (q.x - da.x) * (db.y - da.y) / (db.x - da.x)};
            };
            const Point2 p0 = br(s0), p1 = br(s1);
            for (int h = 0; h < p.edge_count(); ++h) {
                if (!segments_intersect(p0, p1, g.v[h], g.v[p.next(h)])) continue;
                DetSet z2 = z;
                z2.type = DetType::F2;
                z2.contacts.push_back(Contact::corner_on_edge(Corner::BottomRight, h));
                std::optional<RectSpec> r2;
                try {
                    r2 = realize(p, z2, theta);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                if (r2) sink(z2, r2->area());
            }
        }
    }
}

int f_grid_size(int n) { return n <= 16 ? 1024 : (n <= 40 ? 512 : 256); }

}  // namespace

Candidates solve_type_f(const PolygonShape& p, SolveStats* stats, double known_best, double floor_ratio) {
    struct Entry {
        DetSet z;
        double area = 0.0;
        double theta = 0.0;
        bool done = false;
    };
    std::map<std::string, Entry> table;
    SolveStats local;
    auto enumerate = [&](double theta) {
        ++local['F'].events;
        enumerate_f_at(p, theta, [&](const DetSet& z, double a) {
            auto [it, fresh] = table.try_emplace(key_of(z), Entry{z, a, theta, false});
            if (!fresh && !it->second.done && a > it->second.area) {
                it->second.area = a;
                it->second.theta = theta;
            }
        });
    };
    const int S = f_grid_size(p.vertex_count());
    for (int k = 0; k < S; ++k) enumerate(kTwoPi * (k + 0.37) / S);

    Candidates out;
    double best = known_best;
    while (true) {
        Entry* next = nullptr;
        for (auto& [k, e] : table)
            if (!e.done && (!next || e.area > next->area)) next = &e;
        if (!next || next->area < floor_ratio * best) break;
        next->done = true;
        ++local['F'].tested;
        const DetSet z = next->z;
        const double th = next->theta;
        const double lo_b = th - kHalfPi, hi_b = th + kHalfPi;
        FeasibleInterval j;
        try {
            j = feasible_interval(p, z, th, lo_b, hi_b);
        } catch (const std::invalid_argument&) {
            continue;  // degenerate neighbour set
        }
        if (j.empty()) continue;
        Maximum top{th, -1.0};
        std::vector<Maximum> maxima;
        try {
            maxima = maximize_area(p, z, j);
        } catch (const std::invalid_argument&) {
            continue;
        }
        for (const Maximum& m : maxima) {
            const auto r = realize(p, z, m.x);
            if (!r) continue;
            ++local['F'].accepted;
            const bool at_end = m.x == j.lo || m.x == j.hi;
            out.push_back({*r, z, at_end ? Candidate::Origin::Breaking : Candidate::Origin::Maximal});
            best = std::max(best, r->area());
            if (m.value > top.value) top = m;
        }
        // A maximum at an interval end continues into the neighbouring sets.
        if (top.value > 0 && (top.x == j.hi || top.x == j.lo)) {
            if (top.x == j.hi && j.hi < hi_b) enumerate(j.hi + 1e-7);
            if (top.x == j.lo && j.lo > lo_b) enumerate(j.lo - 1e-7);
            if (const auto r = realize(p, z, top.x))
                for (DetSet& zz : corner_sets_near(p, contacts_of(p, *r))) {
                    if (table.count(key_of(zz))) continue;
                    // The neighbour is seeded just off the breaking angle, on its feasible side.
                    for (double t : {top.x + 1e-7, top.x - 1e-7}) try {
                            if (!realize(p, zz, t)) continue;
                            table.emplace(key_of(zz), Entry{zz, r->area(), t, false});
                            break;
                        } catch (const std::invalid_argument&) {
                            break;
                        }
                }
        }
    }
    if (stats) stats->merge(local);
    return out;
}

// ---------------------------------------------------------------------------
// Convex polygons

namespace {

struct ConvexSlice {
    std::vector<Point2> v;
    double ymin = 0.0, ymax = 0.0;

    ConvexSlice(const PolygonShape& p, double theta) {
        const Frame fr(theta);
        for (const Point2& q : p.outer()) v.push_back(fr.to_frame(q));
        ymin = ymax = v[0].y;
        for (const Point2& q : v) {
            ymin = std::min(ymin, q.y);
            ymax = std::max(ymax, q.y);
        }
    }

    // Horizontal chord at height y: [l, r].
    void chord(double y, double& l, double& r) const {
        l = std::numeric_limits<double>::infinity();
        r = -l;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 a = v[i], b = v[(i + 1) % n];
            if ((a.y - y) * (b.y - y) > 0) continue;
            if (a.y == b.y) {
                l = std::min({l, a.x, b.x});
                r = std::max({r, a.x, b.x});
                continue;
            }
            const double x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
            l = std::min(l, x);
            r = std::max(r, x);
        }
    }

    // Area of the widest box spanning [yb, yt]; negative width continues
    // the function past the feasible region so it stays unimodal.
    double box(double yb, double yt, double* xl = nullptr, double* xr = nullptr) const {
        double l0, r0, l1, r1;
        chord(yb, l0, r0);
        chord(yt, l1, r1);
        const double l = std::max(l0, l1), r = std::min(r0, r1);
        if (xl) *xl = l;
        if (xr) *xr = r;
        const double w = r - l;
        return w > 0 ? w * (yt - yb) : w;
    }

    double best(double tol, double* yb_out = nullptr, double* yt_out = nullptr) const {
        auto inner = [&](double yb) { return golden_max([&](double yt) { return box(yb, yt); }, yb, ymax, tol); };
        const Maximum mb = golden_max([&](double yb) { return inner(yb).value; }, ymin, ymax, tol);
        const Maximum mt = inner(mb.x);
        if (yb_out) *yb_out = mb.x;
        if (yt_out) *yt_out = mt.x;
        return std::max(0.0, mt.value);
    }
};

}  // namespace

SolveResult solve_convex(const PolygonShape& p) {
    if (!p.is_convex()) throw std::invalid_argument("solve_convex: polygon is not convex");
    SolveStats stats;
    Candidates all = solve_type_a(p, &stats);
    const double tol = 1e-13;
    auto g = [&](double th) { return ConvexSlice(p, th).best(tol); };
    // g has period π/2; pad the range by one sample so a peak near 0 is interior.
    const double pad = kHalfPi / 96;
    for (const Maximum& m : local_maxima(g, -pad, kHalfPi + pad, 98, 1e-12)) {
        ++stats['F'].events;
        const ConvexSlice s(p, m.x);
        double yb, yt, xl, xr;
        s.best(tol, &yb, &yt);
        s.box(yb, yt, &xl, &xr);
        RectSpec r = rect_from_frame_box(Frame(m.x), xl, xr, yb, yt);
        ++stats['F'].tested;
        if (r.width > 0 && r.height > 0 && contains_rect(p, r)) {
            ++stats['F'].accepted;
            all.push_back({r, identify(p, r), Candidate::Origin::Maximal});
        }
        // Polish through the determining set of the configuration found.
        const DetSet z = identify(p, r);
        if (type_family(z.type) != 'F') continue;
        // A degenerate contact set (two corners on one edge) pins θ; its
        // three-corner subsets still slide.
        std::vector<DetSet> sets{z};
        if (z.contacts.size() >= 4)
            for (std::size_t drop = 0; drop < z.contacts.size(); ++drop) {
                DetSet sub{DetType::F1, {}};
                for (std::size_t k = 0; k < z.contacts.size(); ++k)
                    if (k != drop) sub.contacts.push_back(z.contacts[k]);
                sets.push_back(sub);
            }
        for (const DetSet& zz : sets) try {
                const FeasibleInterval j = feasible_interval(p, zz, m.x, m.x - kHalfPi, m.x + kHalfPi);
                for (const Maximum& mm : maximize_area(p, zz, j))
                    if (auto rr = realize(p, zz, mm.x)) all.push_back({*rr, identify(p, *rr), Candidate::Origin::Maximal});
            } catch (const std::invalid_argument&) {
            }
    }
    SolveResult res = merge_candidates(p, all, 1e-9, 64);
    res.stats.merge(stats);
    return res;
}

// ---------------------------------------------------------------------------

namespace {

std::array<Point2, 4> sorted_corners(const RectSpec& r) {
    auto c = rect_corners(r);
    std::sort(c.begin(), c.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    return c;
}

bool same_rect(const RectSpec& a, const RectSpec& b, double tol) {
    if (dist(a.center, b.center) > tol) return false;
    const auto ca = rect_corners(a), cb = rect_corners(b);
    for (const Point2& x : ca) {
        bool hit = false;
        for (const Point2& y : cb) hit = hit || dist(x, y) <= tol;
        if (!hit) return false;
    }
    return true;
}

}  // namespace

SolveResult merge_candidates(const PolygonShape& p, const Candidates& all, double rel_tol, std::size_t max_optima) {
    SolveResult res;
    std::vector<const Candidate*> ok;
    for (const Candidate& c : all)
        if (c.rect.width > 0 && c.rect.height > 0 && contains_rect(p, c.rect)) ok.push_back(&c);
    for (const Candidate* c : ok) res.best_area = std::max(res.best_area, c->rect.area());
    std::vector<const Candidate*> top;
    for (const Candidate* c : ok)
        if (c->rect.area() >= res.best_area * (1 - rel_tol)) top.push_back(c);
    std::stable_sort(top.begin(), top.end(), [](const Candidate* a, const Candidate* b) {
        if (a->rect.area() != b->rect.area()) return a->rect.area() > b->rect.area();
        const auto ca = sorted_corners(a->rect), cb = sorted_corners(b->rect);
        for (int i = 0; i < 4; ++i) {
            if (ca[i].x != cb[i].x) return ca[i].x < cb[i].x;
            if (ca[i].y != cb[i].y) return ca[i].y < cb[i].y;
        }
        return false;
    });
    const double tol = 1e-6 * p.diameter();
    for (const Candidate* c : top) {
        bool dup = false;
        for (const RectSpec& r : res.rects) dup = dup || same_rect(r, c->rect, tol);
        if (dup) continue;
        if (res.rects.size() >= max_optima) break;
        res.rects.push_back(c->rect);
        res.det_sets.push_back(c->det_set);
        ++res.stats[type_family(c->det_set.type)].optimal;
    }
    return res;
}

SolveResult solve(const PolygonShape& p, const SolveOptions& opt) {
    require_valid(p);
    if (opt.convex_fast_path && p.is_convex()) {
        SolveResult r = solve_convex(p);
        if (r.rects.size() > opt.max_optima) {
            r.rects.resize(opt.max_optima);
            r.det_sets.resize(opt.max_optima);
        }
        return r;
    }
    SolveStats stats;
    Candidates all;
    auto wants = [&](const char* fams) { return opt.types.find_first_of(fams) != std::string::npos; };
    if (wants("A")) {
        auto a = solve_type_a(p, &stats);
        all.insert(all.end(), a.begin(), a.end());
    }
    if (p.reflex_count() > 0 && wants("BCDE")) {
        const EventMap em = build_event_map(p);
        auto r = solve_reflex(p, em, opt, &stats);
        all.insert(all.end(), r.begin(), r.end());
    }
    if (wants("F")) {
        double best = 0.0;
        for (const Candidate& c : all) best = std::max(best, c.rect.area());
        auto f = solve_type_f(p, &stats, best);
        all.insert(all.end(), f.begin(), f.end());
    }
    SolveResult res = merge_candidates(p, all, opt.optimum_rel_tol, opt.max_optima);
    res.stats.merge(stats);
    return res;
}

}  // namespace maxrect
