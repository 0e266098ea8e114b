// Compiled with -mavx2 -mfma -ffp-contract=off so results match the scalar
// reference bit for bit.

#include "maxrect/kernels.hpp"

#include <immintrin.h>

#include <cstdint>
#include <limits>

namespace maxrect::kernels {

namespace {

inline double hmin(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_min_pd(lo, hi);
    return std::min(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

void transform_avx2(double c, double s, std::span<const double> x, std::span<const double> y,
                    std::span<double> ox, std::span<double> oy) {
    const std::size_t n = x.size();
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x.data() + i);
        const __m256d vy = _mm256_loadu_pd(y.data() + i);
        const __m256d rx = _mm256_add_pd(_mm256_mul_pd(vx, vc), _mm256_mul_pd(vy, vs));
        const __m256d ry = _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), vx), vs),
                                         _mm256_mul_pd(vy, vc));
        _mm256_storeu_pd(ox.data() + i, rx);
        _mm256_storeu_pd(oy.data() + i, ry);
    }
    for (; i < n; ++i) {
        ox[i] = x[i] * c + y[i] * s;
        oy[i] = -x[i] * s + y[i] * c;
    }
}

RayHit ray_first_hit_avx2(double ox, double oy, double dx, double dy, const EdgeSoA& e,
                          double tmin) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = e.size();
    const __m256d vox = _mm256_set1_pd(ox), voy = _mm256_set1_pd(oy);
    const __m256d vdx = _mm256_set1_pd(dx), vdy = _mm256_set1_pd(dy);
    const __m256d vtmin = _mm256_set1_pd(tmin);
    const __m256d vinf = _mm256_set1_pd(inf);
    const __m256d zero = _mm256_setzero_pd();
    __m256d best = vinf;
    __m256d best_idx = _mm256_set1_pd(-1.0);
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d four = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4, idx = _mm256_add_pd(idx, four)) {
        const __m256d ax = _mm256_sub_pd(_mm256_loadu_pd(e.x0.data() + i), vox);
        const __m256d ay = _mm256_sub_pd(_mm256_loadu_pd(e.y0.data() + i), voy);
        const __m256d bx = _mm256_sub_pd(_mm256_loadu_pd(e.x1.data() + i), vox);
        const __m256d by = _mm256_sub_pd(_mm256_loadu_pd(e.y1.data() + i), voy);
        const __m256d sa = _mm256_sub_pd(_mm256_mul_pd(vdx, ay), _mm256_mul_pd(vdy, ax));
        const __m256d sb = _mm256_sub_pd(_mm256_mul_pd(vdx, by), _mm256_mul_pd(vdy, bx));
        const __m256d opp =
            _mm256_or_pd(_mm256_and_pd(_mm256_cmp_pd(sa, zero, _CMP_GT_OQ), _mm256_cmp_pd(sb, zero, _CMP_LT_OQ)),
                         _mm256_and_pd(_mm256_cmp_pd(sa, zero, _CMP_LT_OQ), _mm256_cmp_pd(sb, zero, _CMP_GT_OQ)));
        const __m256d ex = _mm256_sub_pd(bx, ax);
        const __m256d ey = _mm256_sub_pd(by, ay);
        const __m256d den = _mm256_sub_pd(_mm256_mul_pd(vdx, ey), _mm256_mul_pd(vdy, ex));
        const __m256d num = _mm256_sub_pd(_mm256_mul_pd(ax, ey), _mm256_mul_pd(ay, ex));
        const __m256d t = _mm256_div_pd(num, den);
        const __m256d ok = _mm256_and_pd(opp, _mm256_cmp_pd(t, vtmin, _CMP_GT_OQ));
        const __m256d cand = _mm256_blendv_pd(vinf, t, ok);
        const __m256d better = _mm256_cmp_pd(cand, best, _CMP_LT_OQ);
        best = _mm256_blendv_pd(best, cand, better);
        best_idx = _mm256_blendv_pd(best_idx, idx, better);
    }
    alignas(32) double tb[4], ib[4];
    _mm256_store_pd(tb, best);
    _mm256_store_pd(ib, best_idx);
    RayHit hit{inf, -1};
    for (int k = 0; k < 4; ++k) {
        const long ki = static_cast<long>(ib[k]);
        if (tb[k] < hit.t || (tb[k] == hit.t && ki >= 0 && (hit.edge < 0 || ki < hit.edge))) {
            hit.t = tb[k];
            hit.edge = ki;
        }
    }
    for (; i < n; ++i) {
        const double ax = e.x0[i] - ox, ay = e.y0[i] - oy;
        const double bx = e.x1[i] - ox, by = e.y1[i] - oy;
        const double sa = dx * ay - dy * ax;
        const double sb = dx * by - dy * bx;
        if (!((sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0))) continue;
        const double ex = bx - ax, ey = by - ay;
        const double t = (ax * ey - ay * ex) / (dx * ey - dy * ex);
        if (t > tmin && t < hit.t) {
            hit.t = t;
            hit.edge = static_cast<long>(i);
        }
    }
    if (hit.t == inf) hit.edge = -1;
    return hit;
}

bool meets_box_avx2(const EdgeSoA& e, const OrientedBox& b) {
    const std::size_t n = e.size();
    const __m256d vcx = _mm256_set1_pd(b.cx), vcy = _mm256_set1_pd(b.cy);
    const __m256d vc = _mm256_set1_pd(b.c), vs = _mm256_set1_pd(b.s);
    const __m256d hw = _mm256_set1_pd(b.hw), hh = _mm256_set1_pd(b.hh);
    const __m256d nhw = _mm256_set1_pd(-b.hw), nhh = _mm256_set1_pd(-b.hh);
    const __m256d zero = _mm256_setzero_pd(), one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d px = _mm256_sub_pd(_mm256_loadu_pd(e.x0.data() + i), vcx);
        const __m256d py = _mm256_sub_pd(_mm256_loadu_pd(e.y0.data() + i), vcy);
        const __m256d qx = _mm256_sub_pd(_mm256_loadu_pd(e.x1.data() + i), vcx);
        const __m256d qy = _mm256_sub_pd(_mm256_loadu_pd(e.y1.data() + i), vcy);
        const __m256d lx0 = _mm256_add_pd(_mm256_mul_pd(px, vc), _mm256_mul_pd(py, vs));
        const __m256d ly0 = _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(zero, px), vs), _mm256_mul_pd(py, vc));
        const __m256d lx1 = _mm256_add_pd(_mm256_mul_pd(qx, vc), _mm256_mul_pd(qy, vs));
        const __m256d ly1 = _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(zero, qx), vs), _mm256_mul_pd(qy, vc));
        const __m256d dx = _mm256_sub_pd(lx1, lx0);
        const __m256d dy = _mm256_sub_pd(ly1, ly0);

        // Slab along x.
        const __m256d dx0 = _mm256_cmp_pd(dx, zero, _CMP_EQ_OQ);
        const __m256d xa = _mm256_div_pd(_mm256_sub_pd(nhw, lx0), dx);
        const __m256d xb = _mm256_div_pd(_mm256_sub_pd(hw, lx0), dx);
        const __m256d xin = _mm256_and_pd(_mm256_cmp_pd(lx0, nhw, _CMP_GE_OQ), _mm256_cmp_pd(lx0, hw, _CMP_LE_OQ));
        __m256d lo = _mm256_blendv_pd(_mm256_max_pd(zero, _mm256_min_pd(xa, xb)), zero, dx0);
        __m256d hi = _mm256_blendv_pd(_mm256_min_pd(one, _mm256_max_pd(xa, xb)), one, dx0);
        __m256d alive = _mm256_or_pd(_mm256_andnot_pd(dx0, _mm256_cmp_pd(zero, zero, _CMP_EQ_OQ)), xin);

        const __m256d dy0 = _mm256_cmp_pd(dy, zero, _CMP_EQ_OQ);
        const __m256d ya = _mm256_div_pd(_mm256_sub_pd(nhh, ly0), dy);
        const __m256d yb = _mm256_div_pd(_mm256_sub_pd(hh, ly0), dy);
        const __m256d yin = _mm256_and_pd(_mm256_cmp_pd(ly0, nhh, _CMP_GE_OQ), _mm256_cmp_pd(ly0, hh, _CMP_LE_OQ));
        lo = _mm256_blendv_pd(_mm256_max_pd(lo, _mm256_min_pd(ya, yb)), lo, dy0);
        hi = _mm256_blendv_pd(_mm256_min_pd(hi, _mm256_max_pd(ya, yb)), hi, dy0);
        alive = _mm256_and_pd(alive, _mm256_or_pd(_mm256_andnot_pd(dy0, _mm256_cmp_pd(zero, zero, _CMP_EQ_OQ)), yin));

        const __m256d hitm = _mm256_and_pd(alive, _mm256_cmp_pd(lo, hi, _CMP_LE_OQ));
        if (_mm256_movemask_pd(hitm) != 0) return true;
    }
    if (i < n) {
        EdgeSoA tail;
        for (; i < n; ++i) tail.push(e.x0[i], e.y0[i], e.x1[i], e.y1[i]);
        return scalar_table().any_edge_meets_box(tail, b);
    }
    return false;
}

std::size_t crossings_right_avx2(double px, double py, const EdgeSoA& e) {
    const std::size_t n = e.size();
    const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d y0 = _mm256_loadu_pd(e.y0.data() + i);
        const __m256d y1 = _mm256_loadu_pd(e.y1.data() + i);
        const __m256d x0 = _mm256_loadu_pd(e.x0.data() + i);
        const __m256d x1 = _mm256_loadu_pd(e.x1.data() + i);
        const __m256d straddle = _mm256_xor_pd(_mm256_cmp_pd(y0, vpy, _CMP_GT_OQ), _mm256_cmp_pd(y1, vpy, _CMP_GT_OQ));
        const __m256d x = _mm256_add_pd(
            x0, _mm256_div_pd(_mm256_mul_pd(_mm256_sub_pd(vpy, y0), _mm256_sub_pd(x1, x0)), _mm256_sub_pd(y1, y0)));
        const __m256d right = _mm256_and_pd(straddle, _mm256_cmp_pd(x, vpx, _CMP_GT_OQ));
        count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(right))));
    }
    for (; i < n; ++i) {
        const double y0 = e.y0[i], y1 = e.y1[i];
        if ((y0 > py) == (y1 > py)) continue;
        const double x = e.x0[i] + (py - y0) * (e.x1[i] - e.x0[i]) / (y1 - y0);
        if (x > px) ++count;
    }
    return count;
}

void scanline_avx2(double y, const EdgeSoA& e, std::vector<double>& out) {
    const std::size_t n = e.size();
    const __m256d vy = _mm256_set1_pd(y);
    alignas(32) double xs[4];
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d y0 = _mm256_loadu_pd(e.y0.data() + i);
        const __m256d y1 = _mm256_loadu_pd(e.y1.data() + i);
        const __m256d straddle = _mm256_xor_pd(_mm256_cmp_pd(y0, vy, _CMP_GT_OQ), _mm256_cmp_pd(y1, vy, _CMP_GT_OQ));
        const int mask = _mm256_movemask_pd(straddle);
        if (mask == 0) continue;
        const __m256d x0 = _mm256_loadu_pd(e.x0.data() + i);
        const __m256d x1 = _mm256_loadu_pd(e.x1.data() + i);
        const __m256d x = _mm256_add_pd(
            x0, _mm256_div_pd(_mm256_mul_pd(_mm256_sub_pd(vy, y0), _mm256_sub_pd(x1, x0)), _mm256_sub_pd(y1, y0)));
        _mm256_store_pd(xs, x);
        for (int k = 0; k < 4; ++k)
            if (mask & (1 << k)) out.push_back(xs[k]);
    }
    for (; i < n; ++i) {
        const double y0 = e.y0[i], y1 = e.y1[i];
        if ((y0 > y) == (y1 > y)) continue;
        out.push_back(e.x0[i] + (y - y0) * (e.x1[i] - e.x0[i]) / (y1 - y0));
    }
}

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{"avx2", transform_avx2, ray_first_hit_avx2, meets_box_avx2,
                                   crossings_right_avx2, scanline_avx2};
    return &table;
}

}  // namespace maxrect::kernels
