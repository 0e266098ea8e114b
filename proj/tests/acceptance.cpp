// End-to-end acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "maxrect/oracle.hpp"
#include "maxrect/solvers.hpp"
#include "maxrect/staircase.hpp"
#include "test_support.hpp"

using namespace maxrect;

namespace {

using Ring = std::vector<Point2>;

struct Fixture {
    const char* name;
    PolygonShape p;
};

Ring square_ring(double x0, double y0, double x1, double y1, bool ccw = true) {
    Ring r{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    if (!ccw) std::reverse(r.begin(), r.end());
    return r;
}

std::vector<Fixture> fixtures() {
    std::vector<Fixture> f;
    f.push_back({"unit square", PolygonShape(square_ring(0, 0, 1, 1))});
    f.push_back({"diamond", PolygonShape({{1, 0}, {2, 1}, {1, 2}, {0, 1}})});
    f.push_back({"right triangle", PolygonShape({{0, 0}, {1, 0}, {0, 1}})});
    f.push_back({"L-shape", PolygonShape({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}})});
    f.push_back({"plus", PolygonShape({{1, 0}, {2, 0}, {2, 1}, {3, 1}, {3, 2}, {2, 2}, {2, 3}, {1, 3}, {1, 2}, {0, 2},
                                       {0, 1}, {1, 1}})});
    f.push_back({"holed square", PolygonShape(square_ring(0, 0, 1, 1), {square_ring(0.4, 0.4, 0.6, 0.6, false)})});
    f.push_back({"frame", PolygonShape(square_ring(0, 0, 4, 3), {square_ring(0.5, 0.5, 3.5, 2.5, false)})});
    f.push_back({"two holes", PolygonShape(square_ring(0, 0, 5, 2), {square_ring(1, 0.5, 1.5, 1.5, false),
                                                                      square_ring(3, 0.8, 3.6, 1.2, false)})});
    f.push_back({"tilted hole", PolygonShape(square_ring(-2, -2, 2, 2), {{{0, -1}, {-1, 0}, {0, 1}, {1, 0}}})});
    f.push_back({"V-notch", PolygonShape({{0, -1}, {4, 1.0 / 3}, {4, 1.3}, {1, 1.3}, {0, 1}, {-1, 1.3}, {-4, 1.3},
                                          {-4, 1.0 / 3}})});
    f.push_back({"teeth", PolygonShape({{-2, -2}, {-0.1, -2}, {0, -1}, {0.1, -2}, {2, -2}, {2, -0.1}, {1, 0}, {2, 0.1},
                                        {2, 2}, {0.1, 2}, {0, 1}, {-0.1, 2}, {-2, 2}, {-2, 0.1}, {-1, 0}, {-2, -0.1}})});
    f.push_back({"shallow notches",
                 PolygonShape({{-1, -1}, {-0.35, -1}, {-0.3, -0.85}, {-0.25, -1}, {1, -1}, {1, -0.15}, {0.9, -0.1},
                               {1, -0.05}, {1, 1}, {0.25, 1}, {0.2, 0.9}, {0.15, 1}, {-1, 1}, {-1, 0.25}, {-0.95, 0.2},
                               {-1, 0.15}})});
    f.push_back({"comb", PolygonShape({{0, 0}, {5, 0}, {5, 3}, {4, 3}, {4, 1}, {3, 1}, {3, 3}, {2, 3}, {2, 1}, {1, 1},
                                       {1, 3}, {0, 3}})});
    f.push_back({"T-shape", PolygonShape({{1, 0}, {2, 0}, {2, 2}, {3, 2}, {3, 3}, {0, 3}, {0, 2}, {1, 2}})});
    f.push_back({"zigzag", PolygonShape({{0, 0}, {1, 0.5}, {2, 0}, {3, 0.5}, {4, 0}, {4, 2}, {3, 1.5}, {2, 2}, {1, 1.5},
                                         {0, 2}})});
    f.push_back({"arrow", PolygonShape({{0, 0.6}, {2, 0.6}, {2, 0}, {3.2, 1}, {2, 2}, {2, 1.4}, {0, 1.4}})});
    std::vector<Point2> hex;
    for (int i = 0; i < 6; ++i) hex.push_back({std::cos(i * kPi / 3), std::sin(i * kPi / 3)});
    f.push_back({"hexagon", PolygonShape(hex)});
    f.push_back({"trapezoid", PolygonShape({{0, 0}, {4, 0}, {3, 1.5}, {1, 1.5}})});
    std::vector<Point2> star;
    for (int i = 0; i < 10; ++i) {
        const double r = i % 2 ? 0.45 : 1.0, a = kHalfPi + i * kPi / 5;
        star.push_back({r * std::cos(a), r * std::sin(a)});
    }
    f.push_back({"five-point star", PolygonShape(star)});
    f.push_back({"staircase", PolygonShape({{0, 0}, {4, 0}, {4, 1}, {3, 1}, {3, 2}, {2, 2}, {2, 3}, {1, 3}, {1, 4},
                                            {0, 4}})});
    return f;
}

PolygonShape random_polygon(std::mt19937_64& rng, int i, int max_n) {
    std::uniform_int_distribution<int> n(5, max_n);
    std::uniform_real_distribution<double> rmin(0.1, 0.8);
    switch (i % 4) {
        case 0: return testing::random_skyline(rng, 2 + i % 7);
        case 1: return testing::random_convex_polygon(rng, n(rng));
        default: return testing::random_star_polygon(rng, n(rng), rmin(rng), 1.0);
    }
}

struct Line {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, bool soft, const std::function<Line()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    Line l;
    try {
        l = check();
    } catch (const std::exception& e) {
        l = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!l.pass && !soft) ++failures;
    std::printf("[%s] %d %s: %s (%.1f s)\n", l.pass ? "PASS" : (soft ? "SOFT-FAIL" : "FAIL"), id, name, l.detail.c_str(),
                secs);
    std::fflush(stdout);
}

Line soundness() {
    std::mt19937_64 rng(1001);
    std::vector<PolygonShape> set;
    while (set.size() < 200) {
        auto p = random_polygon(rng, static_cast<int>(set.size()), 40);
        if (validate(p).ok()) set.push_back(std::move(p));
    }
    for (auto& f : fixtures()) set.push_back(f.p);
    int rects = 0, bad = 0;
    std::string first;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto r = solve(set[i]);
        if (r.rects.empty()) ++bad;
        for (const auto& q : r.rects) {
            ++rects;
            const Verdict v = verify(set[i], q);
            if (!v && first.empty()) first = "polygon " + std::to_string(i) + ": " + v.diagnostic;
            bad += !v;
        }
    }
    return {bad == 0, std::to_string(set.size()) + " polygons, " + std::to_string(rects) + " rectangles, " +
                          std::to_string(bad) + " failures" + (first.empty() ? "" : "; " + first)};
}

Line dominance() {
    std::mt19937_64 rng(2002);
    std::vector<PolygonShape> corpus;
    for (auto& f : fixtures()) corpus.push_back(f.p);
    while (corpus.size() < 50) {
        auto p = random_polygon(rng, static_cast<int>(corpus.size()), 30);
        if (validate(p).ok()) corpus.push_back(std::move(p));
    }
    int bad = 0;
    double margin = 1e300;
    for (const auto& p : corpus) {
        const double s = solve(p).best_area;
        const double o = sweep_oracle(p, 720, p.diameter() / 200).area_lower_bound;
        bad += s < o;
        margin = std::min(margin, (s - o) / s);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "50 polygons, %d below the oracle bound, smallest relative margin %.3g", bad, margin);
    return {bad == 0, buf};
}

Line exact_fixtures() {
    const auto f = fixtures();
    std::vector<std::string> bad;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) bad.push_back(what);
    };
    const auto sq = solve(f[0].p), di = solve(f[1].p), tr = solve(f[2].p), l = solve(f[3].p), pl = solve(f[4].p);
    expect(std::fabs(sq.best_area - 1) <= 1e-9, "square area");
    expect(std::fabs(di.best_area - 2) <= 1e-9, "diamond area");
    const double th = di.rects.empty() ? 0 : std::fmod(canonical_rect(di.rects[0]).theta, kHalfPi);
    expect(std::fabs(th - kPi / 4) <= 1e-6, "diamond angle");
    expect(std::fabs(tr.best_area - 0.25) <= 1e-6, "triangle area");
    expect(std::fabs(l.best_area - 2) <= 1e-6 && l.rects.size() == 2, "L-shape");
    expect(std::fabs(pl.best_area - 3) <= 1e-6 && pl.rects.size() == 2, "plus");
    std::string d = "square, diamond, triangle, L (2 optima), plus (2 optima)";
    for (const auto& b : bad) d += "; wrong " + b;
    return {bad.empty(), d};
}

Line convex_equivalence() {
    std::mt19937_64 rng(3003);
    std::uniform_int_distribution<int> n(3, 30);
    int count = 0, bad = 0;
    double worst = 0;
    while (count < 50) {
        const auto p = testing::random_convex_polygon(rng, n(rng));
        if (!validate(p).ok() || !p.is_convex()) continue;
        ++count;
        SolveOptions general;
        general.convex_fast_path = false;
        const double a = solve(p, general).best_area, b = solve_convex(p).best_area;
        const double rel = std::fabs(a - b) / a;
        worst = std::max(worst, rel);
        bad += rel > 1e-9;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "50 polygons, worst relative gap %.2g", worst);
    return {bad == 0, buf};
}

Line staircase_master() {
    std::mt19937_64 rng(4004);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int probes = 0, bad = 0, polys = 0;
    while (polys < 20) {
        const auto p = polys % 2 ? testing::random_star_polygon(rng, 12 + polys) : testing::random_skyline(rng, 4 + polys / 4);
        if (!validate(p).ok()) continue;
        ++polys;
        const EventMap em = build_event_map(p);
        const auto table = alignment_table(p);
        for (int u = 0; u < p.vertex_count(); ++u) {
            if (!p.is_reflex(u)) continue;
            const auto iv = quadrant_interval(p, u);
            StaircaseEngine eng(p, em, table, u, iv.begin, iv.end());
            std::vector<double> th;
            for (int k = 0; k < 100; ++k) th.push_back(eng.begin() + unit(rng) * (eng.end() - eng.begin()));
            std::sort(th.begin(), th.end());
            for (double t : th) {
                if (t <= eng.begin() + 1e-6) continue;
                eng.advance_to(t, nullptr);
                ++probes;
                bad += !eng.state().same_structure(build_staircase(p, u, t));
            }
        }
    }
    return {bad == 0, std::to_string(polys) + " polygons, " + std::to_string(probes) + " probes, " +
                          std::to_string(bad) + " mismatches"};
}

Line event_scaling() {
    std::mt19937_64 rng(5005);
    std::vector<double> xs, ys;
    std::string d;
    for (int n : {20, 40, 80}) {
        double total = 0;
        int vertices = 0;
        for (int trial = 0; trial < 4; ++trial) {
            const auto p = testing::random_star_polygon(rng, n, 0.3, 1.0);
            if (!validate(p).ok()) continue;
            const EventMap em = build_event_map(p);
            const auto table = alignment_table(p);
            for (int u = 0; u < p.vertex_count(); ++u) {
                if (!p.is_reflex(u)) continue;
                const auto iv = quadrant_interval(p, u);
                StaircaseEngine eng(p, em, table, u, iv.begin, iv.end());
                while (eng.step(nullptr)) {
                }
                total += static_cast<double>(eng.processed_events());
                ++vertices;
            }
        }
        const double mean = total / std::max(vertices, 1);
        xs.push_back(std::log(n));
        ys.push_back(std::log(std::max(mean, 1e-9)));
        char buf[64];
        std::snprintf(buf, sizeof buf, "%sn=%d: %.1f", d.empty() ? "" : ", ", n, mean);
        d += buf;
    }
    // Least-squares slope in log-log space.
    const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 3; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    char buf[64];
    std::snprintf(buf, sizeof buf, "; fitted exponent %.2f", slope);
    return {slope <= 2.3, "mean events per reflex vertex " + d + buf};
}

Line holes() {
    const PolygonShape p(square_ring(0, 0, 1, 1), {square_ring(0.4, 0.4, 0.6, 0.6, false)});
    const auto r = solve(p);
    bool ok = !r.rects.empty();
    for (const auto& q : r.rects) ok = ok && static_cast<bool>(verify(p, q));
    const double bound = sweep_oracle(p, 720, p.diameter() / 200).area_lower_bound;
    const bool cover_rejected = !contains_rect(p, rect_from_frame_box(Frame(0.0), 0.1, 0.9, 0.1, 0.9));
    char buf[160];
    std::snprintf(buf, sizeof buf, "area %.9f vs bound %.6f, %zu optima verified, covering rectangle %s", r.best_area,
                  bound, r.rects.size(), cover_rejected ? "rejected" : "accepted");
    return {ok && r.best_area >= bound && cover_rejected, buf};
}

Line type_a_squares() {
    std::mt19937_64 rng(6006);
    std::size_t count = 0;
    int bad = 0;
    std::vector<PolygonShape> set;
    for (auto& f : fixtures()) set.push_back(f.p);
    for (int i = 0; i < 60; ++i) set.push_back(random_polygon(rng, i, 30));
    for (const auto& p : set) {
        if (!validate(p).ok()) continue;
        for (const auto& c : solve_type_a(p)) {
            ++count;
            bad += std::fabs(c.rect.width - c.rect.height) > 1e-9 * c.rect.width;
        }
    }
    return {bad == 0 && count > 0, std::to_string(count) + " type-A candidates, " + std::to_string(bad) + " non-square"};
}

Line performance() {
    std::mt19937_64 rng(7007);
    // 100 vertices on the unit circle, 30 of them (never adjacent) pulled inward.
    PolygonShape p;
    std::uniform_real_distribution<double> ang(0.0, kTwoPi), dent(0.5, 0.9);
    do {
        std::vector<double> a(100);
        for (auto& x : a) x = ang(rng);
        std::sort(a.begin(), a.end());
        std::vector<int> slots(50);
        for (int i = 0; i < 50; ++i) slots[i] = 2 * i;
        std::shuffle(slots.begin(), slots.end(), rng);
        std::vector<double> r(100, 1.0);
        for (int i = 0; i < 30; ++i) r[slots[i]] = dent(rng);
        Ring ring;
        for (int i = 0; i < 100; ++i) ring.push_back({r[i] * std::cos(a[i]), r[i] * std::sin(a[i])});
        p = PolygonShape(ring);
    } while (!validate(p).ok() || std::abs(p.reflex_count() - 30) > 5);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = solve(p);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[128];
    std::snprintf(buf, sizeof buf, "n=100, k=%d solved in %.1f s, area %.6f", p.reflex_count(), secs, r.best_area);
    return {secs < 60.0, buf};
}

}  // namespace

int main() {
    report(1, "soundness", false, soundness);
    report(2, "oracle dominance", false, dominance);
    report(3, "exact fixtures", false, exact_fixtures);
    report(4, "convex equivalence", false, convex_equivalence);
    report(5, "staircase maintenance", false, staircase_master);
    report(6, "event-count scaling", false, event_scaling);
    report(7, "holes", false, holes);
    report(8, "type-A squares", false, type_a_squares);
    report(9, "performance", true, performance);
    return failures == 0 ? 0 : 1;
}
