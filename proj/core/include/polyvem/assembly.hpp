#pragma once

#include <functional>

#include <Eigen/Core>

#include "polyvem/dof_map.hpp"
#include "polyvem/local_ops.hpp"
#include "polyvem/mesh.hpp"

namespace polyvem {

using VectorField = std::function<Point2(const Point2&)>;

/// Dirichlet-reduced global system: the interior-interior stiffness block
/// (SPD), the right-hand side with the boundary lifting already subtracted,
/// and the sampled boundary values.
struct LinearSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    std::vector<int> interior_to_global;
    Eigen::VectorXd boundary_values;  // indexed by global dof, zero on interior dofs
    int total_dofs = 0;
};

LinearSystem assemble(const Mesh& mesh, const DofMap& dofs, MomentBasisKind kind,
                      StabilizationKind stab, const ScalarField& f, const ScalarField& g);

struct SolveResult {
    Eigen::VectorXd dofs;    // full global vector, boundary values filled in
    double residual = 0.0;   // ||K x - b|| / ||b|| on the reduced system
};

/// Direct symmetric factorization (LDLT). Breakdown raises ConditioningError
/// with spectral diagnostics.
SolveResult solve(const LinearSystem& system);

/// Broken H1 seminorm |u - Pi_nabla u_n|_{1,tau} from the exact gradient.
double h1_error(const Mesh& mesh, const DofMap& dofs, MomentBasisKind kind,
                const Eigen::VectorXd& solution, const VectorField& grad_exact,
                int quad_degree = -1);

} // namespace polyvem
