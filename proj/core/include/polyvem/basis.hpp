#pragma once

#include <Eigen/Core>

#include "polyvem/geometry.hpp"

namespace polyvem {

enum class MomentBasisKind { Monomial, OrthoGS, OrthoDiag };

const char* to_string(MomentBasisKind kind);

/// Polynomial basis of P_degree(E) expressed in scaled monomials:
/// q_alpha = sum_beta coeffs(alpha, beta) m_beta.
struct MomentBasis {
    MomentBasisKind kind = MomentBasisKind::Monomial;
    int degree = 0;
    Eigen::MatrixXd coeffs;  // n_degree x n_degree

    int size() const { return static_cast<int>(coeffs.rows()); }
};

/// Mass matrix H(alpha, beta) = (m_alpha, m_beta)_{0,E} of the scaled
/// monomials up to `degree`, by polygon quadrature of degree 2*degree.
Eigen::MatrixXd mass_matrix(const Polygon& polygon, int degree);

MomentBasis monomial_basis(int degree);

/// L2(E)-orthonormal basis by modified Gram-Schmidt in the H inner product
/// with one reorthogonalization pass. Coefficients are lower triangular with
/// positive diagonal and satisfy GS * H * GS^T = Id.
MomentBasis gram_schmidt_basis(const Polygon& polygon, int degree);

/// The Gram-Schmidt core on an externally supplied Gram matrix.
Eigen::MatrixXd gram_schmidt_from_gram(const Eigen::MatrixXd& gram);

/// Keeps the constant monomial and replaces the rest by the eigenvector
/// directions that turn the non-constant mass block into the identity.
/// The eigendecomposition runs on the diagonally pre-scaled block so that
/// grading (thin elements) does not masquerade as singularity; eigenvalues
/// of the scaled block below 1e-14 of its largest raise ConditioningError.
MomentBasis diagonalization_basis(const Polygon& polygon, int degree);

Eigen::MatrixXd diagonalization_from_gram(const Eigen::MatrixXd& gram);

MomentBasis make_basis(MomentBasisKind kind, const Polygon& polygon, int degree);

} // namespace polyvem
