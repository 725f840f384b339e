#pragma once

#include <Eigen/Core>

#include "polyvem/geometry.hpp"

namespace polyvem {

/// Exponent pair (a1, a2) of a bivariate monomial, graded ordering:
/// (0,0)<->1, (1,0)<->2, (0,1)<->3, (2,0)<->4, (1,1)<->5, (0,2)<->6, ...
struct MultiIndex {
    int a1 = 0;
    int a2 = 0;
    int degree() const { return a1 + a2; }
    bool operator==(const MultiIndex&) const = default;
};

MultiIndex multi_index(int linear);     // 1-based linear index -> pair
int linear_index(const MultiIndex& m);  // pair -> 1-based linear index

/// dim P_ell = (ell+1)(ell+2)/2; zero for negative ell.
int poly_space_dim(int ell);

/// Scaled monomial m_alpha(x) = ((x-x_E)/h_E)^a1 * ((y-y_E)/h_E)^a2 and its
/// derivatives, all attached to one polygon's centroid and diameter.
class ScaledMonomials {
public:
    ScaledMonomials(const Polygon& polygon, int degree);

    int degree() const { return degree_; }
    int size() const { return n_; }

    double value(int linear, const Point2& p) const;
    Point2 gradient(int linear, const Point2& p) const;
    double laplacian(int linear, const Point2& p) const;

    /// Row of values (m_1(p), ..., m_n(p)).
    Eigen::RowVectorXd values_at(const Point2& p) const;
    /// Rows of x- and y-derivatives at p.
    void gradients_at(const Point2& p, Eigen::RowVectorXd& dx, Eigen::RowVectorXd& dy) const;

    /// Coefficient matrix of the Laplacian: Delta m_alpha = sum_beta L(alpha,beta) m_beta,
    /// size n_deg x n_{deg-2}. Exact (integer combinatorics over h_E^2).
    Eigen::MatrixXd laplacian_coefficients() const;

    Point2 local(const Point2& p) const {
        return {(p.x - centroid_.x) / h_, (p.y - centroid_.y) / h_};
    }
    double h() const { return h_; }

private:
    int degree_;
    int n_;
    Point2 centroid_;
    double h_;
};

} // namespace polyvem
