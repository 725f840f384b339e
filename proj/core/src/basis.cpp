#include "polyvem/basis.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "polyvem/errors.hpp"
#include "polyvem/monomials.hpp"
#include "polyvem/quadrature.hpp"

namespace polyvem {

const char* to_string(MomentBasisKind kind) {
    switch (kind) {
        case MomentBasisKind::Monomial: return "monomial";
        case MomentBasisKind::OrthoGS: return "ortho-gs";
        case MomentBasisKind::OrthoDiag: return "ortho-diag";
    }
    return "?";
}

Eigen::MatrixXd mass_matrix(const Polygon& polygon, int degree) {
    const ScaledMonomials mono(polygon, degree);
    const int n = mono.size();
    const QuadratureRule quad = polygon_quadrature(polygon, 2 * degree);

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (size_t q = 0; q < quad.nodes.size(); ++q) {
        const Eigen::RowVectorXd v = mono.values_at(quad.nodes[q]);
        H.selfadjointView<Eigen::Lower>().rankUpdate(v.transpose(), quad.weights[q]);
    }
    const Eigen::MatrixXd full = H.selfadjointView<Eigen::Lower>();
    return full;
}

MomentBasis monomial_basis(int degree) {
    const int n = poly_space_dim(degree);
    return {MomentBasisKind::Monomial, degree, Eigen::MatrixXd::Identity(n, n)};
}

Eigen::MatrixXd gram_schmidt_from_gram(const Eigen::MatrixXd& gram) {
    const int n = static_cast<int>(gram.rows());
    Eigen::MatrixXd GS = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        Eigen::VectorXd c = Eigen::VectorXd::Unit(n, a);
        for (int pass = 0; pass < 2; ++pass) {  // twice is enough
            for (int k = 0; k < a; ++k) {
                const double r = GS.row(k).dot((gram * c).transpose());
                c -= r * GS.row(k).transpose();
            }
        }
        const double norm2 = c.dot(gram * c);
        if (!(norm2 > 0.0))
            throw ConditioningError("Gram-Schmidt breakdown: mass matrix lost positive definiteness at element " +
                                    std::to_string(a + 1));
        GS.row(a) = c / std::sqrt(norm2);
    }
    return GS;
}

MomentBasis gram_schmidt_basis(const Polygon& polygon, int degree) {
    return {MomentBasisKind::OrthoGS, degree, gram_schmidt_from_gram(mass_matrix(polygon, degree))};
}

Eigen::MatrixXd diagonalization_from_gram(const Eigen::MatrixXd& gram) {
    const int n = static_cast<int>(gram.rows());
    Eigen::MatrixXd W = Eigen::MatrixXd::Identity(n, n);
    if (n <= 1) return W;

    const int m = n - 1;  // non-constant block
    const Eigen::MatrixXd H22 = gram.bottomRightCorner(m, m);

    Eigen::VectorXd scale(m);
    for (int i = 0; i < m; ++i) {
        if (!(H22(i, i) > 0.0)) throw ConditioningError("mass matrix block has a nonpositive diagonal entry");
        scale(i) = std::sqrt(H22(i, i));
    }
    const Eigen::MatrixXd scaled =
        scale.cwiseInverse().asDiagonal() * H22 * scale.cwiseInverse().asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled);
    if (eig.info() != Eigen::Success) throw ConditioningError("eigendecomposition of the mass block failed");
    const Eigen::VectorXd lambda = eig.eigenvalues();
    const double lambda_max = lambda(m - 1);
    if (!(lambda.minCoeff() > 1e-14 * lambda_max))
        throw ConditioningError("mass matrix block is numerically singular (relative eigenvalue below 1e-14)");

    // rows of W: q_alpha = sum_beta W(alpha,beta) m_beta; the transform is
    // (V * Lambda^{-1/2})^T applied after undoing the diagonal scaling.
    const Eigen::MatrixXd cols =
        scale.cwiseInverse().asDiagonal() * eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal();
    W.bottomRightCorner(m, m) = cols.transpose();
    return W;
}

MomentBasis diagonalization_basis(const Polygon& polygon, int degree) {
    return {MomentBasisKind::OrthoDiag, degree, diagonalization_from_gram(mass_matrix(polygon, degree))};
}

MomentBasis make_basis(MomentBasisKind kind, const Polygon& polygon, int degree) {
    switch (kind) {
        case MomentBasisKind::Monomial: return monomial_basis(degree);
        case MomentBasisKind::OrthoGS: return gram_schmidt_basis(polygon, degree);
        case MomentBasisKind::OrthoDiag: return diagonalization_basis(polygon, degree);
    }
    throw Error("unknown basis kind");
}

} // namespace polyvem
