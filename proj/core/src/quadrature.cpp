#include "polyvem/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "polyvem/errors.hpp"

namespace polyvem {

double QuadratureRule1D::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double QuadratureRule::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double legendre(int n, double x) {
    if (n == 0) return 1.0;
    double pm = 1.0, p = x;
    for (int k = 2; k <= n; ++k) {
        const double pn = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm) / k;
        pm = p;
        p = pn;
    }
    return p;
}

namespace {

// value and derivative of P_n by the standard recurrences
void legendre_pair(int n, double x, double& p, double& dp) {
    p = legendre(n, x);
    if (n == 0) {
        dp = 0.0;
        return;
    }
    const double pm = legendre(n - 1, x);
    dp = n * (x * p - pm) / (x * x - 1.0);
}

} // namespace

QuadratureRule1D gauss_legendre(int n) {
    if (n < 1) throw Error("gauss_legendre needs n >= 1");
    QuadratureRule1D rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double p = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            legendre_pair(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre_pair(n, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<size_t>(k)] = -x;  // ascending order
        rule.weights[static_cast<size_t>(k)] = w;
        rule.nodes[static_cast<size_t>(n - 1 - k)] = x;
        rule.weights[static_cast<size_t>(n - 1 - k)] = w;
    }
    if (n % 2 == 1) {
        double p = 0.0, dp = 0.0;
        legendre_pair(n, 0.0, p, dp);
        rule.nodes[static_cast<size_t>(n / 2)] = 0.0;
        rule.weights[static_cast<size_t>(n / 2)] = 2.0 / (dp * dp);
    }
    return rule;
}

QuadratureRule1D gauss_lobatto(int p) {
    if (p < 1) throw Error("gauss_lobatto needs p >= 1");
    const int n = p + 1;  // node count
    QuadratureRule1D rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    const double endpoint_w = 2.0 / (p * (p + 1.0));
    rule.nodes.front() = -1.0;
    rule.nodes.back() = 1.0;
    rule.weights.front() = endpoint_w;
    rule.weights.back() = endpoint_w;

    // interior nodes: roots of P_p', found by Newton from Chebyshev guesses
    for (int k = 1; k <= p - 1; ++k) {
        double x = std::cos(std::numbers::pi * k / p);
        for (int it = 0; it < 100; ++it) {
            double pp = 0.0, dp = 0.0;
            legendre_pair(p, x, pp, dp);
            const double d2p = (2.0 * x * dp - p * (p + 1.0) * pp) / (1.0 - x * x);
            const double dx = dp / d2p;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double pp = legendre(p, x);
        rule.nodes[static_cast<size_t>(p - k)] = x;  // guesses run right to left
        rule.weights[static_cast<size_t>(p - k)] = 2.0 / (p * (p + 1.0) * pp * pp);
    }
    if (p % 2 == 0) rule.nodes[static_cast<size_t>(p / 2)] = 0.0;  // symmetry, kill roundoff
    return rule;
}

QuadratureRule triangle_quadrature(const Triangle& tri, int degree) {
    // A monomial of total degree d maps under ((u,v) -> (u, v(1-u)), jacobian
    // (1-u)) to degree <= d+1 per direction, so n = ceil((d+2)/2) Gauss points
    // per direction are exact.
    const int n = (std::max(degree, 0) + 3) / 2;
    const QuadratureRule1D g = gauss_legendre(n);

    const double area2 = 2.0 * triangle_area(tri);
    const Point2& a = tri[0];
    const Point2 e1 = tri[1] - tri[0];
    const Point2 e2 = tri[2] - tri[0];

    QuadratureRule rule;
    rule.nodes.reserve(static_cast<size_t>(n * n));
    rule.weights.reserve(static_cast<size_t>(n * n));
    for (int i = 0; i < n; ++i) {
        const double u = 0.5 * (g.nodes[static_cast<size_t>(i)] + 1.0);
        const double wu = 0.5 * g.weights[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const double v = 0.5 * (g.nodes[static_cast<size_t>(j)] + 1.0);
            const double wv = 0.5 * g.weights[static_cast<size_t>(j)];
            const double r = u;
            const double s = v * (1.0 - u);
            rule.nodes.push_back(a + r * e1 + s * e2);
            rule.weights.push_back(wu * wv * (1.0 - u) * area2);
        }
    }
    return rule;
}

QuadratureRule polygon_quadrature(const Polygon& polygon, int degree) {
    QuadratureRule rule;
    for (const Triangle& t : triangulate(polygon)) {
        QuadratureRule tr = triangle_quadrature(t, degree);
        rule.nodes.insert(rule.nodes.end(), tr.nodes.begin(), tr.nodes.end());
        rule.weights.insert(rule.weights.end(), tr.weights.begin(), tr.weights.end());
    }
    return rule;
}

} // namespace polyvem
