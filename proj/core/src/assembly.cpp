#include "polyvem/assembly.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "polyvem/errors.hpp"
#include "polyvem/quadrature.hpp"
#include "polyvem/spectral.hpp"

namespace polyvem {

LinearSystem assemble(const Mesh& mesh, const DofMap& dofs, MomentBasisKind kind,
                      StabilizationKind stab, const ScalarField& f, const ScalarField& g) {
    LinearSystem sys;
    sys.total_dofs = dofs.total;

    std::vector<int> reduced(static_cast<size_t>(dofs.total), -1);
    sys.boundary_values = Eigen::VectorXd::Zero(dofs.total);
    for (int i = 0; i < dofs.total; ++i) {
        if (dofs.on_boundary[static_cast<size_t>(i)])
            sys.boundary_values(i) = g(dofs.position[static_cast<size_t>(i)]);
        else {
            reduced[static_cast<size_t>(i)] = static_cast<int>(sys.interior_to_global.size());
            sys.interior_to_global.push_back(i);
        }
    }

    const int ni = static_cast<int>(sys.interior_to_global.size());
    sys.matrix = Eigen::MatrixXd::Zero(ni, ni);
    sys.rhs = Eigen::VectorXd::Zero(ni);

    for (int c = 0; c < mesh.num_cells(); ++c) {
        const Polygon poly = mesh.cell_polygon(c);
        const LocalOperators ops = build_local_operators(poly, dofs.degree, kind, stab);
        const Eigen::VectorXd load = local_load(ops, f);
        const auto& loc2glob = dofs.cell_to_global[static_cast<size_t>(c)];

        for (int i = 0; i < ops.size(); ++i) {
            const int gi = loc2glob[static_cast<size_t>(i)];
            const int ri = reduced[static_cast<size_t>(gi)];
            if (ri < 0) continue;
            sys.rhs(ri) += load(i);
            for (int j = 0; j < ops.size(); ++j) {
                const int gj = loc2glob[static_cast<size_t>(j)];
                const int rj = reduced[static_cast<size_t>(gj)];
                if (rj >= 0)
                    sys.matrix(ri, rj) += ops.stiffness(i, j);
                else
                    sys.rhs(ri) -= ops.stiffness(i, j) * sys.boundary_values(gj);  // Dirichlet lifting
            }
        }
    }
    return sys;
}

SolveResult solve(const LinearSystem& system) {
    SolveResult result;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(system.matrix);
    if (ldlt.info() != Eigen::Success) {
        const SpectralSummary spec = condition_number(system.matrix, 0);
        throw ConditioningError("LDLT factorization broke down (lambda_max = " +
                                std::to_string(spec.lambda_max) + ", lambda_min = " +
                                std::to_string(spec.lambda_min_nonzero) + ", cond = " +
                                std::to_string(spec.condition) + ")");
    }
    const Eigen::VectorXd x = ldlt.solve(system.rhs);

    const double rhs_norm = system.rhs.norm();
    const double res = (system.matrix.selfadjointView<Eigen::Lower>() * x - system.rhs).norm();
    result.residual = rhs_norm > 0.0 ? res / rhs_norm : res;

    result.dofs = system.boundary_values;
    for (size_t r = 0; r < system.interior_to_global.size(); ++r)
        result.dofs(system.interior_to_global[r]) = x(static_cast<Eigen::Index>(r));
    return result;
}

double h1_error(const Mesh& mesh, const DofMap& dofs, MomentBasisKind kind,
                const Eigen::VectorXd& solution, const VectorField& grad_exact,
                int quad_degree) {
    const int p = dofs.degree;
    if (quad_degree < 0) quad_degree = std::max(2 * p + 2, 20);

    double sum = 0.0;
    Eigen::RowVectorXd dx, dy;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const Polygon poly = mesh.cell_polygon(c);
        const LocalOperators ops = build_local_operators(poly, p, kind, StabilizationKind::S1);
        const auto& loc2glob = dofs.cell_to_global[static_cast<size_t>(c)];

        Eigen::VectorXd local(ops.size());
        for (int i = 0; i < ops.size(); ++i) local(i) = solution(loc2glob[static_cast<size_t>(i)]);
        const Eigen::VectorXd coeff = ops.pi_star * local;

        const ScaledMonomials mono(poly, p);
        const QuadratureRule quad = polygon_quadrature(poly, quad_degree);
        double cell = 0.0;
        for (size_t q = 0; q < quad.nodes.size(); ++q) {
            mono.gradients_at(quad.nodes[q], dx, dy);
            const double gx = coeff.dot(ops.expansion * dx.transpose());
            const double gy = coeff.dot(ops.expansion * dy.transpose());
            const Point2 ge = grad_exact(quad.nodes[q]);
            cell += quad.weights[q] * ((ge.x - gx) * (ge.x - gx) + (ge.y - gy) * (ge.y - gy));
        }
        sum += cell;
    }
    return std::sqrt(sum);
}

} // namespace polyvem
