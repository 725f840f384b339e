#pragma once

#include <vector>

#include "polyvem/geometry.hpp"

namespace polyvem {

/// 1D rule on [-1, 1].
struct QuadratureRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    double weight_sum() const;
};

/// 2D rule; weights sum to the measure of the integration domain.
struct QuadratureRule {
    std::vector<Point2> nodes;
    std::vector<double> weights;
    double weight_sum() const;

    template <typename F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

/// n-point Gauss-Legendre, exact up to degree 2n-1.
QuadratureRule1D gauss_legendre(int n);

/// Gauss-Lobatto with p+1 nodes including the endpoints, exact up to
/// degree 2p-1. These nodes double as the edge dof positions.
QuadratureRule1D gauss_lobatto(int p);

/// Duffy-style tensorized Gauss rule on a triangle, exact for bivariate
/// polynomials up to `degree`.
QuadratureRule triangle_quadrature(const Triangle& tri, int degree);

/// Triangulates the polygon and concatenates triangle rules; exact up to
/// `degree`, weight sum equals the polygon area.
QuadratureRule polygon_quadrature(const Polygon& polygon, int degree);

/// Legendre polynomial value P_n(x) (used by the node solvers and tests).
double legendre(int n, double x);

} // namespace polyvem
