#pragma once

#include <functional>
#include <vector>

namespace maxrect {

/// Homogeneous polynomial in (c, s) = (cos θ, sin θ):
/// sum_k coef[k] * c^(m-k) * s^k with m = degree().
class HomPoly {
public:
    HomPoly() = default;
    explicit HomPoly(std::vector<double> coef) : coef_(std::move(coef)) {}
    /// The linear form a*c + b*s.
    static HomPoly linear(double a, double b) { return HomPoly({a, b}); }
    static HomPoly constant(double v) { return HomPoly({v}); }

    int degree() const { return static_cast<int>(coef_.size()) - 1; }
    const std::vector<double>& coef() const { return coef_; }
    double operator()(double theta) const;

    HomPoly operator*(const HomPoly& o) const;
    HomPoly operator*(double k) const;
    /// Sum; the lower-degree operand is lifted by powers of (c² + s²), so the
    /// degrees must have equal parity.
    HomPoly operator+(const HomPoly& o) const;
    HomPoly operator-(const HomPoly& o) const { return *this + o * -1.0; }
    HomPoly lifted(int degree) const;

private:
    std::vector<double> coef_;
};

/// All θ in [0, 2π) with p(θ) = 0 (isolated roots only; an identically zero
/// polynomial yields nothing).
std::vector<double> angle_roots(const HomPoly& p);

/// Real roots of sum_k a[k] x^k, polished by Newton steps.
std::vector<double> real_poly_roots(const std::vector<double>& a);

struct Maximum {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section search for a maximum of a unimodal f on [a, b].
Maximum golden_max(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

/// Local maxima of f on [a, b]: `samples` uniform probes bracket candidates,
/// each refined by golden section; the endpoints are included when they are
/// local maxima. Sorted by x.
std::vector<Maximum> local_maxima(const std::function<double(double)>& f, double a, double b,
                                  int samples = 64, double tol = 1e-12);

/// Best of local_maxima (value -inf when the interval is empty).
Maximum global_max(const std::function<double(double)>& f, double a, double b, int samples = 64,
                   double tol = 1e-12);

}  // namespace maxrect
