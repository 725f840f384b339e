#pragma once

#include <functional>

#include <Eigen/Core>

#include "polyvem/basis.hpp"
#include "polyvem/geometry.hpp"
#include "polyvem/monomials.hpp"

namespace polyvem {

enum class StabilizationKind { S1, S2, S3, S4 };

const char* to_string(StabilizationKind kind);

/// Local dof ordering: the N^E vertex values (ccw), then for each edge the
/// p-1 internal Gauss-Lobatto values walking the boundary, then the n_{p-2}
/// internal moments in multi-index order.
struct DofLayout {
    int vertex_count = 0;
    int degree = 1;

    int boundary_count() const { return vertex_count * degree; }
    int internal_count() const { return poly_space_dim(degree - 2); }
    int total() const { return boundary_count() + internal_count(); }

    int vertex_dof(int v) const { return v; }
    int edge_dof(int e, int k) const { return vertex_count + e * (degree - 1) + (k - 1); }  // k in 1..p-1
    int internal_dof(int beta) const { return boundary_count() + beta; }
};

DofLayout dof_layout(const Polygon& polygon, int p);

/// Boundary dof positions in layout order (vertices, then edge-internal
/// Gauss-Lobatto points).
std::vector<Point2> boundary_dof_points(const Polygon& polygon, int p);

/// The auxiliary matrix bundle of the projector construction:
///   D(j, a) = dof_j(q_a)
///   B(a, j) = P_0(phi_j) for a = 1, (grad q_a, grad phi_j) otherwise
///   G row 1 = P_0(q_b), rows >= 2 equal Gtilde = (grad q_a, grad q_b)
/// where {q_a} is the degree-p expansion basis and {phi_j} the canonical
/// basis dual to the dofs induced by the degree-(p-2) moment basis.
struct ProjectionMatrices {
    Eigen::MatrixXd D;
    Eigen::MatrixXd B;
    Eigen::MatrixXd G;
    Eigen::MatrixXd Gtilde;
};

/// Direct route, valid for any moment/expansion coefficient pair.
/// `moment` holds the n_{p-2} x n_{p-2} moment-basis coefficients and
/// `expansion` the n_p x n_p expansion coefficients (rows in scaled
/// monomials). `mass` is the degree-p monomial mass matrix.
ProjectionMatrices build_projection_matrices(const Polygon& polygon, int p,
                                             const Eigen::MatrixXd& moment,
                                             const Eigen::MatrixXd& expansion,
                                             const Eigen::MatrixXd& mass);

/// Transform route for the L2-orthonormal basis: everything is derived from
/// the plain-monomial matrices through the lower-triangular coefficient
/// matrix GS, with the internal columns of B rebuilt from F = L - Gtilde and
/// the moment matrix C.
ProjectionMatrices build_projection_matrices_orthonormal(const Polygon& polygon, int p,
                                                         const Eigen::MatrixXd& gs,
                                                         const Eigen::MatrixXd& mass);

/// Edgewise Gauss-Lobatto matrix L(a, b) = int_{dE} (dn q_a) q_b of the
/// expansion basis (exact: integrand degree 2p-1).
Eigen::MatrixXd boundary_derivative_matrix(const Polygon& polygon, int p, const Eigen::MatrixXd& expansion);

struct LocalOperators {
    Polygon polygon;
    DofLayout layout;
    MomentBasisKind kind = MomentBasisKind::Monomial;

    Eigen::MatrixXd mass;       // degree-p monomial mass matrix H
    Eigen::MatrixXd moment;     // moment-basis coefficients, n_{p-2} square
    Eigen::MatrixXd expansion;  // expansion-basis coefficients, n_p square

    ProjectionMatrices proj;
    Eigen::MatrixXd pi_star;    // n_p x N, dofs -> expansion coefficients
    Eigen::MatrixXd pi;         // N x N, dof form of the energy projector
    Eigen::MatrixXd pi0;        // n_{p-2} x N, dofs -> moment-basis coefficients (empty for p = 1)
    Eigen::MatrixXd moment_mass;  // n_{p-2} square mass of the moment basis

    Eigen::MatrixXd consistency;    // (pi_star)^T Gtilde pi_star
    Eigen::MatrixXd stabilization;  // S
    Eigen::MatrixXd stiffness;      // K

    int size() const { return layout.total(); }
};

LocalOperators build_local_operators(const Polygon& polygon, int p, MomentBasisKind kind,
                                     StabilizationKind stab);

/// Stabilization matrix for an already-built operator set.
Eigen::MatrixXd stabilization_matrix(const LocalOperators& ops, StabilizationKind kind);

/// Boundary mass matrix (phi_i, phi_j)_{0,dE} of the trace basis, assembled
/// edgewise with a Gauss rule exact for the degree-2p integrand.
Eigen::MatrixXd boundary_mass_matrix(const Polygon& polygon, int p);

using ScalarField = std::function<double(const Point2&)>;

/// Local discrete load: (int f) * (vertex average) for p = 1, otherwise
/// int_E f * Pi0 phi_j through the internal moments.
Eigen::VectorXd local_load(const LocalOperators& ops, const ScalarField& f, int quad_degree = -1);

/// Dof vector of a smooth function: point values at the boundary dofs and
/// quadrature moments against the moment basis.
Eigen::VectorXd interpolate_dofs(const LocalOperators& ops, const ScalarField& f, int quad_degree = -1);

} // namespace polyvem
