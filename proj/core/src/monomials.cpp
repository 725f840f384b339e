#include "polyvem/monomials.hpp"

#include <cmath>

#include "polyvem/errors.hpp"

namespace polyvem {

MultiIndex multi_index(int linear) {
    if (linear < 1) throw Error("linear monomial index must be >= 1");
    const int k = linear - 1;
    int d = 0;
    while ((d + 1) * (d + 2) / 2 <= k) ++d;
    const int j = k - d * (d + 1) / 2;
    return {d - j, j};
}

int linear_index(const MultiIndex& m) {
    const int d = m.degree();
    return d * (d + 1) / 2 + m.a2 + 1;
}

int poly_space_dim(int ell) {
    if (ell < 0) return 0;
    return (ell + 1) * (ell + 2) / 2;
}

ScaledMonomials::ScaledMonomials(const Polygon& polygon, int degree)
    : degree_(degree),
      n_(poly_space_dim(degree)),
      centroid_(polygon.centroid()),
      h_(polygon.diameter()) {}

namespace {

double ipow(double b, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

double ScaledMonomials::value(int linear, const Point2& p) const {
    const MultiIndex a = multi_index(linear);
    const Point2 q = local(p);
    return ipow(q.x, a.a1) * ipow(q.y, a.a2);
}

Point2 ScaledMonomials::gradient(int linear, const Point2& p) const {
    const MultiIndex a = multi_index(linear);
    const Point2 q = local(p);
    const double gx = a.a1 == 0 ? 0.0 : a.a1 * ipow(q.x, a.a1 - 1) * ipow(q.y, a.a2) / h_;
    const double gy = a.a2 == 0 ? 0.0 : a.a2 * ipow(q.x, a.a1) * ipow(q.y, a.a2 - 1) / h_;
    return {gx, gy};
}

double ScaledMonomials::laplacian(int linear, const Point2& p) const {
    const MultiIndex a = multi_index(linear);
    const Point2 q = local(p);
    double s = 0.0;
    if (a.a1 >= 2) s += a.a1 * (a.a1 - 1.0) * ipow(q.x, a.a1 - 2) * ipow(q.y, a.a2);
    if (a.a2 >= 2) s += a.a2 * (a.a2 - 1.0) * ipow(q.x, a.a1) * ipow(q.y, a.a2 - 2);
    return s / (h_ * h_);
}

Eigen::RowVectorXd ScaledMonomials::values_at(const Point2& p) const {
    const Point2 q = local(p);
    Eigen::RowVectorXd row(n_);
    // graded Pascal walk: value (a1,a2) = x^(a1) y^(a2) built from the previous row
    for (int k = 1; k <= n_; ++k) {
        const MultiIndex a = multi_index(k);
        if (a.degree() == 0)
            row(k - 1) = 1.0;
        else if (a.a2 == 0)
            row(k - 1) = row(linear_index({a.a1 - 1, 0}) - 1) * q.x;
        else
            row(k - 1) = row(linear_index({a.a1, a.a2 - 1}) - 1) * q.y;
    }
    return row;
}

void ScaledMonomials::gradients_at(const Point2& p, Eigen::RowVectorXd& dx, Eigen::RowVectorXd& dy) const {
    const Eigen::RowVectorXd vals = values_at(p);
    dx.resize(n_);
    dy.resize(n_);
    for (int k = 1; k <= n_; ++k) {
        const MultiIndex a = multi_index(k);
        dx(k - 1) = a.a1 == 0 ? 0.0 : a.a1 * vals(linear_index({a.a1 - 1, a.a2}) - 1) / h_;
        dy(k - 1) = a.a2 == 0 ? 0.0 : a.a2 * vals(linear_index({a.a1, a.a2 - 1}) - 1) / h_;
    }
}

Eigen::MatrixXd ScaledMonomials::laplacian_coefficients() const {
    const int m = poly_space_dim(degree_ - 2);
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n_, m);
    const double inv_h2 = 1.0 / (h_ * h_);
    for (int k = 1; k <= n_; ++k) {
        const MultiIndex a = multi_index(k);
        if (a.a1 >= 2) L(k - 1, linear_index({a.a1 - 2, a.a2}) - 1) += a.a1 * (a.a1 - 1.0) * inv_h2;
        if (a.a2 >= 2) L(k - 1, linear_index({a.a1, a.a2 - 2}) - 1) += a.a2 * (a.a2 - 1.0) * inv_h2;
    }
    return L;
}

} // namespace polyvem
