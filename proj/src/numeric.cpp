#include "maxrect/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

namespace maxrect {

double HomPoly::operator()(double theta) const {
    const double c = std::cos(theta), s = std::sin(theta);
    const int m = degree();
    double v = 0.0;
    for (int k = 0; k <= m; ++k) v += coef_[k] * std::pow(c, m - k) * std::pow(s, k);
    return v;
}

HomPoly HomPoly::operator*(const HomPoly& o) const {
    if (coef_.empty() || o.coef_.empty()) return {};
    std::vector<double> r(coef_.size() + o.coef_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coef_.size(); ++i)
        for (std::size_t j = 0; j < o.coef_.size(); ++j) r[i + j] += coef_[i] * o.coef_[j];
    return HomPoly(std::move(r));
}

HomPoly HomPoly::operator*(double k) const {
    HomPoly r = *this;
    for (double& v : r.coef_) v *= k;
    return r;
}

HomPoly HomPoly::lifted(int deg) const {
    HomPoly r = *this;
    const HomPoly unit({1.0, 0.0, 1.0});
    while (r.degree() + 2 <= deg) r = r * unit;
    return r;
}

HomPoly HomPoly::operator+(const HomPoly& o) const {
    if (coef_.empty()) return o;
    if (o.coef_.empty()) return *this;
    const int deg = std::max(degree(), o.degree());
    HomPoly a = lifted(deg), b = o.lifted(deg);
    if (a.degree() != b.degree()) return a;  // parity mismatch: caller error
    for (std::size_t i = 0; i < a.coef_.size(); ++i) a.coef_[i] += b.coef_[i];
    return a;
}

std::vector<double> real_poly_roots(const std::vector<double>& a_in) {
    std::vector<double> a = a_in;
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return {};
    while (!a.empty() && std::fabs(a.back()) <= 1e-14 * scale) a.pop_back();
    std::vector<double> roots;
    const int deg = static_cast<int>(a.size()) - 1;
    if (deg <= 0) return roots;
    if (deg == 1) {
        roots.push_back(-a[0] / a[1]);
    } else if (deg == 2) {
        const double disc = a[1] * a[1] - 4 * a[2] * a[0];
        if (disc >= 0.0) {
            const double q = -0.5 * (a[1] + std::copysign(std::sqrt(disc), a[1]));
            roots.push_back(q / a[2]);
            if (q != 0.0) roots.push_back(a[0] / q);
        } else if (disc > -1e-12 * a[1] * a[1]) {
            roots.push_back(-a[1] / (2 * a[2]));
        }
    } else {
        Eigen::VectorXd coeffs(deg + 1);
        for (int i = 0; i <= deg; ++i) coeffs[i] = a[i] / scale;
        Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
        solver.compute(coeffs);
        for (int i = 0; i < solver.roots().size(); ++i) {
            const auto z = solver.roots()[i];
            if (std::fabs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z))) roots.push_back(z.real());
        }
    }
    // Newton polish.
    for (double& x : roots) {
        for (int it = 0; it < 4; ++it) {
            double p = 0.0, dp = 0.0;
            for (int i = deg; i >= 0; --i) {
                dp = dp * x + p;
                p = p * x + a[i];
            }
            if (dp == 0.0) break;
            const double step = p / dp;
            x -= step;
            if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(x))) break;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> angle_roots(const HomPoly& p) {
    const auto& g = p.coef();
    const int m = p.degree();
    std::vector<double> out;
    if (m < 1) return out;
    double scale = 0.0;
    for (double v : g) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return out;
    // Roots with c != 0: sum g_k tan^k = 0.
    for (double t : real_poly_roots(g)) {
        const double th = std::atan(t);
        out.push_back(th < 0 ? th + 2 * std::numbers::pi : th);
        out.push_back(th + std::numbers::pi);
    }
    // c = 0 (θ = ±π/2) is a root when the s^m coefficient vanishes.
    if (std::fabs(g[m]) <= 1e-14 * scale) {
        out.push_back(0.5 * std::numbers::pi);
        out.push_back(1.5 * std::numbers::pi);
    }
    for (double& th : out) {
        th = std::fmod(th, 2 * std::numbers::pi);
        if (th < 0) th += 2 * std::numbers::pi;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return b - a < 1e-13; }),
              out.end());
    return out;
}

Maximum golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * std::max(1.0, std::fabs(a) + std::fabs(b))) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

std::vector<Maximum> local_maxima(const std::function<double(double)>& f, double a, double b,
                                  int samples, double tol) {
    std::vector<Maximum> out;
    if (!(b >= a)) return out;
    if (b - a <= tol) {
        const double x = 0.5 * (a + b);
        out.push_back({x, f(x)});
        return out;
    }
    const int n = std::max(samples, 3);
    std::vector<double> xs(n + 1), fs(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = a + (b - a) * i / n;
        fs[i] = f(xs[i]);
    }
    // A peak inside the first or last sample gap hides behind a higher endpoint.
    auto end_gap = [&](double lo, double hi, double fend) {
        const Maximum m = golden_max(f, lo, hi, tol);
        if (m.value > fend && m.x - lo > tol && hi - m.x > tol) out.push_back(m);
    };
    if (fs[0] >= fs[1]) {
        out.push_back({xs[0], fs[0]});
        end_gap(xs[0], xs[1], fs[0]);
    }
    for (int i = 1; i < n; ++i)
        if (fs[i] >= fs[i - 1] && fs[i] >= fs[i + 1]) {
            Maximum m = golden_max(f, xs[i - 1], xs[i + 1], tol);
            if (m.value < fs[i]) m = {xs[i], fs[i]};
            out.push_back(m);
        }
    if (fs[n] >= fs[n - 1]) {
        out.push_back({xs[n], fs[n]});
        end_gap(xs[n - 1], xs[n], fs[n]);
    }
    std::sort(out.begin(), out.end(), [](const Maximum& l, const Maximum& r) { return l.x < r.x; });
    return out;
}

Maximum global_max(const std::function<double(double)>& f, double a, double b, int samples,
                   double tol) {
    Maximum best{a, -std::numeric_limits<double>::infinity()};
    for (const Maximum& m : local_maxima(f, a, b, samples, tol))
        if (m.value > best.value) best = m;
    return best;
}

}  // namespace maxrect
