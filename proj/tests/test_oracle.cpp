#include <cmath>
#include <random>

#include "doctest.h"
#include "maxrect/oracle.hpp"
#include "test_support.hpp"

using namespace maxrect;

namespace {

PolygonShape unit_square() { return PolygonShape({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
PolygonShape diamond() { return PolygonShape({{1, 0}, {2, 1}, {1, 2}, {0, 1}}); }
PolygonShape l_shape() { return PolygonShape({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }
PolygonShape holed_square() {
    return PolygonShape({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0.4, 0.4}, {0.4, 0.6}, {0.6, 0.6}, {0.6, 0.4}}});
}

}  // namespace

TEST_CASE("axis-aligned grid bound on simple shapes") {
    const double h = 0.01;
    const auto sq = axis_aligned_best(unit_square(), 0.0, h);
    CHECK(sq.area_lower_bound >= (1 - 2 * h) * (1 - 2 * h));
    CHECK(sq.area_lower_bound <= 1.0);
    CHECK(contains_rect(unit_square(), sq.rect));
    CHECK(axis_aligned_best(diamond(), kPi / 4, h).area_lower_bound >= 1.9);
    const auto l = axis_aligned_best(l_shape(), 0.0, h);
    CHECK(l.area_lower_bound >= 1.92);
    CHECK(contains_rect(l_shape(), l.rect));
    CHECK_THROWS_AS(axis_aligned_best(unit_square(), 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("orientation sweep bounds") {
    CHECK(sweep_oracle(unit_square(), 4, 0.01).area_lower_bound >= 0.96);
    CHECK(sweep_oracle(diamond(), 2, 0.01).area_lower_bound >= 1.9);
    const auto tri = sweep_oracle(PolygonShape({{0, 0}, {1, 0}, {0, 1}}), 360, 0.005);
    CHECK(tri.area_lower_bound <= 0.25);
    CHECK(tri.area_lower_bound >= 0.25 - 4 * 0.005);
    CHECK(tri.orientations_sampled == 360);
}

TEST_CASE("grid bounds are inside the polygon, holes included") {
    const auto p = holed_square();
    const auto r = sweep_oracle(p, 16, 0.01);
    CHECK(contains_rect(p, r.rect));
    CHECK(verify(p, r.rect));
    CHECK(r.area_lower_bound >= 0.36);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const auto q = testing::random_star_polygon(rng, 12, 0.3, 1.0);
        const auto b = sweep_oracle(q, 8, q.diameter() / 100);
        CHECK(contains_rect(q, b.rect));
    }
}

TEST_CASE("refining the orientation set never lowers the bound") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i) {
        const auto q = testing::random_star_polygon(rng, 10, 0.4, 1.0);
        const double h = q.diameter() / 80;
        const double coarse = sweep_oracle(q, 6, h).area_lower_bound;
        const double fine = sweep_oracle(q, 12, h).area_lower_bound;  // superset of the 6 angles
        CHECK(fine >= coarse);
    }
}

TEST_CASE("verify diagnostics") {
    const auto sq = unit_square();
    CHECK(verify(sq, rect_from_frame_box(Frame(0.0), 0, 1, 0, 1)));
    const auto wide = verify(sq, rect_from_frame_box(Frame(0.0), 0, 1.01, 0, 1));
    CHECK_FALSE(wide.ok);
    CHECK(wide.diagnostic == "right side exits P");
    const auto hole = verify(holed_square(), rect_from_frame_box(Frame(0.0), 0.1, 0.9, 0.1, 0.9));
    CHECK_FALSE(hole.ok);
    CHECK(hole.diagnostic == "hole 0 intersects interior");
}

TEST_CASE("verify agrees with contains_rect on random rectangles") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0), ang(0.0, kPi), sz(0.02, 0.8);
    int agree = 0, total = 0;
    for (int i = 0; i < 200; ++i) {
        const auto p = testing::random_star_polygon(rng, 10, 0.3, 1.0);
        for (int j = 0; j < 50; ++j) {
            RectSpec r{{0.5 * u(rng), 0.5 * u(rng)}, ang(rng), sz(rng), sz(rng)};
            ++total;
            agree += static_cast<bool>(verify(p, r, 200)) == contains_rect(p, r);
        }
    }
    CHECK(agree == total);
}
