#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "maxrect/kernels.hpp"

using namespace maxrect::kernels;

namespace {

EdgeSoA random_edges(std::mt19937_64& rng, std::size_t n, bool grid) {
    std::uniform_real_distribution<double> u(-10, 10);
    std::uniform_int_distribution<int> g(-5, 5);
    EdgeSoA e;
    for (std::size_t i = 0; i < n; ++i) {
        if (grid)
            e.push(g(rng), g(rng), g(rng), g(rng));
        else
            e.push(u(rng), u(rng), u(rng), u(rng));
    }
    return e;
}

}  // namespace

TEST_CASE("active table is one of the known variants") {
    const KernelTable& t = active();
    CHECK((t.name == "scalar" || t.name == "avx2"));
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
    const KernelTable* simd = avx2_table();
    if (simd == nullptr) {
        MESSAGE("AVX2 variant not built; nothing to compare");
        return;
    }
    const KernelTable& ref = scalar_table();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-10, 10), ang(0, 6.283185307179586);

    for (int trial = 0; trial < 400; ++trial) {
        const bool grid = trial % 2 == 1;  // integer data produces exact ties and touches
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 37);
        const EdgeSoA e = random_edges(rng, n, grid);

        std::vector<double> ox1(n), oy1(n), ox2(n), oy2(n);
        const double a = ang(rng), c = std::cos(a), s = std::sin(a);
        ref.transform(c, s, e.x0, e.y0, ox1, oy1);
        simd->transform(c, s, e.x0, e.y0, ox2, oy2);
        CHECK(ox1 == ox2);
        CHECK(oy1 == oy2);

        for (int q = 0; q < 10; ++q) {
            const double px = grid ? std::round(u(rng)) : u(rng);
            const double py = grid ? std::round(u(rng)) + 0.5 : u(rng);
            const double dir = ang(rng);
            const RayHit h1 = ref.ray_first_hit(px, py, std::cos(dir), std::sin(dir), e, 0.0);
            const RayHit h2 = simd->ray_first_hit(px, py, std::cos(dir), std::sin(dir), e, 0.0);
            CHECK(h1.edge == h2.edge);
            if (h1.edge >= 0) CHECK(h1.t == h2.t);

            CHECK(ref.crossings_right(px, py, e) == simd->crossings_right(px, py, e));

            OrientedBox b{px, py, c, s, std::fabs(u(rng)) * 0.3, std::fabs(u(rng)) * 0.3};
            if (q == 0) b.hh = 0.0;  // degenerate box (a segment)
            CHECK(ref.any_edge_meets_box(e, b) == simd->any_edge_meets_box(e, b));

            std::vector<double> s1, s2;
            ref.scanline(py, e, s1);
            simd->scanline(py, e, s2);
            CHECK(s1 == s2);
        }
    }
}

TEST_CASE("scalar ray shooting picks the nearest proper crossing") {
    EdgeSoA e;
    e.push(2, -1, 2, 1);
    e.push(1, -1, 1, 1);
    e.push(3, 0, 3, 1);  // touches the ray's line at an endpoint: not proper
    const RayHit h = scalar_table().ray_first_hit(0, 0, 1, 0, e, 0.0);
    CHECK(h.edge == 1);
    CHECK(h.t == doctest::Approx(1.0));
}

TEST_CASE("box test detects an edge inside the box") {
    EdgeSoA e;
    e.push(-0.1, 0, 0.1, 0);
    OrientedBox b{0, 0, 1, 0, 1, 1};
    CHECK(scalar_table().any_edge_meets_box(e, b));
    b.cx = 5;
    CHECK_FALSE(scalar_table().any_edge_meets_box(e, b));
}
