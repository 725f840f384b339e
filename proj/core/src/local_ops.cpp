#include "polyvem/local_ops.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "polyvem/errors.hpp"
#include "polyvem/quadrature.hpp"

namespace polyvem {

const char* to_string(StabilizationKind kind) {
    switch (kind) {
        case StabilizationKind::S1: return "s1";
        case StabilizationKind::S2: return "s2";
        case StabilizationKind::S3: return "s3";
        case StabilizationKind::S4: return "s4";
    }
    return "?";
}

DofLayout dof_layout(const Polygon& polygon, int p) {
    if (p < 1) throw UnsupportedDegreeError("degree of accuracy must be >= 1");
    return {polygon.num_vertices(), p};
}

std::vector<Point2> boundary_dof_points(const Polygon& polygon, int p) {
    const int nv = polygon.num_vertices();
    std::vector<Point2> pts;
    pts.reserve(static_cast<size_t>(nv * p));
    for (int v = 0; v < nv; ++v) pts.push_back(polygon.vertex(v));
    const QuadratureRule1D gl = gauss_lobatto(p);
    for (int e = 0; e < nv; ++e) {
        const Point2 a = polygon.edge_start(e);
        const Point2 b = polygon.edge_end(e);
        for (int k = 1; k <= p - 1; ++k) {
            const double t = 0.5 * (gl.nodes[static_cast<size_t>(k)] + 1.0);
            pts.push_back(a + t * (b - a));
        }
    }
    return pts;
}

namespace {

// Energy Gram matrix of the scaled monomials, quadrature degree 2p-2.
Eigen::MatrixXd monomial_energy_matrix(const Polygon& polygon, int p) {
    const ScaledMonomials mono(polygon, p);
    const int n = mono.size();
    const QuadratureRule quad = polygon_quadrature(polygon, std::max(2 * p - 2, 0));
    Eigen::MatrixXd Gt = Eigen::MatrixXd::Zero(n, n);
    Eigen::RowVectorXd dx, dy;
    for (size_t q = 0; q < quad.nodes.size(); ++q) {
        mono.gradients_at(quad.nodes[q], dx, dy);
        Gt.selfadjointView<Eigen::Lower>().rankUpdate(dx.transpose(), quad.weights[q]);
        Gt.selfadjointView<Eigen::Lower>().rankUpdate(dy.transpose(), quad.weights[q]);
    }
    const Eigen::MatrixXd full = Gt.selfadjointView<Eigen::Lower>();
    return full;
}

// Maps Gauss-Lobatto node k of edge e to the local dof index.
int edge_node_dof(const DofLayout& layout, int e, int k) {
    const int nv = layout.vertex_count;
    if (k == 0) return layout.vertex_dof(e);
    if (k == layout.degree) return layout.vertex_dof((e + 1) % nv);
    return layout.edge_dof(e, k);
}

// First row of B: P_0 applied to the canonical basis.
Eigen::RowVectorXd p0_of_canonical(const Polygon& polygon, const DofLayout& layout,
                                   const Eigen::MatrixXd& moment) {
    const int N = layout.total();
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(N);
    if (layout.degree == 1) {
        row.head(layout.vertex_count).setConstant(1.0 / layout.vertex_count);
        return row;
    }
    // P_0(v) = (1/|E|) int v; expand the constant 1 in the moment basis and
    // read the coefficients off the internal dofs: M^T w = e_1.
    const int m = layout.internal_count();
    const Eigen::VectorXd w = moment.transpose().partialPivLu().solve(Eigen::VectorXd::Unit(m, 0));
    for (int b = 0; b < m; ++b) row(layout.internal_dof(b)) = w(b);
    return row;
}

// First row of G: P_0 applied to the expansion basis.
Eigen::RowVectorXd p0_of_expansion(const Polygon& polygon, int p, const Eigen::MatrixXd& expansion,
                                   const Eigen::MatrixXd& mass) {
    const ScaledMonomials mono(polygon, p);
    if (p == 1) {
        Eigen::RowVectorXd avg = Eigen::RowVectorXd::Zero(mono.size());
        for (const Point2& v : polygon.vertices()) avg += mono.values_at(v);
        avg /= polygon.num_vertices();
        return avg * expansion.transpose();
    }
    return (expansion * mass.col(0)).transpose() / polygon.area();
}

} // namespace

Eigen::MatrixXd boundary_derivative_matrix(const Polygon& polygon, int p, const Eigen::MatrixXd& expansion) {
    const ScaledMonomials mono(polygon, p);
    const int n = mono.size();
    const QuadratureRule1D gl = gauss_lobatto(p);

    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    Eigen::RowVectorXd dx, dy;
    for (int e = 0; e < polygon.num_vertices(); ++e) {
        const Point2 a = polygon.edge_start(e);
        const Point2 b = polygon.edge_end(e);
        const Point2 nrm = polygon.outward_normal(e);
        const double jac = 0.5 * polygon.edge_length(e);
        for (int k = 0; k <= p; ++k) {
            const double t = 0.5 * (gl.nodes[static_cast<size_t>(k)] + 1.0);
            const Point2 x = a + t * (b - a);
            const double w = gl.weights[static_cast<size_t>(k)] * jac;
            mono.gradients_at(x, dx, dy);
            const Eigen::VectorXd dn = expansion * (nrm.x * dx + nrm.y * dy).transpose();
            const Eigen::VectorXd vals = expansion * mono.values_at(x).transpose();
            L += w * dn * vals.transpose();
        }
    }
    return L;
}

ProjectionMatrices build_projection_matrices(const Polygon& polygon, int p,
                                             const Eigen::MatrixXd& moment,
                                             const Eigen::MatrixXd& expansion,
                                             const Eigen::MatrixXd& mass) {
    const DofLayout layout = dof_layout(polygon, p);
    const ScaledMonomials mono(polygon, p);
    const int n = mono.size();
    const int m = layout.internal_count();
    const int N = layout.total();
    const double area = polygon.area();

    ProjectionMatrices out;

    // D: boundary rows evaluate the expansion basis, internal rows are the
    // scaled moments (T H M^T)/|E|.
    out.D.resize(N, n);
    const std::vector<Point2> bpts = boundary_dof_points(polygon, p);
    for (int j = 0; j < layout.boundary_count(); ++j)
        out.D.row(j) = mono.values_at(bpts[static_cast<size_t>(j)]) * expansion.transpose();
    if (m > 0)
        out.D.bottomRows(m) = (moment * mass.topRows(m) * expansion.transpose()) / area;

    // B rows >= 2: integration by parts. Boundary part by edge Gauss-Lobatto
    // (the trace basis is Lagrange on those nodes, so each node hits one dof);
    // internal part from the Laplacian expanded in the moment basis.
    out.B = Eigen::MatrixXd::Zero(n, N);
    const QuadratureRule1D gl = gauss_lobatto(p);
    Eigen::RowVectorXd dx, dy;
    for (int e = 0; e < polygon.num_vertices(); ++e) {
        const Point2 a = polygon.edge_start(e);
        const Point2 b = polygon.edge_end(e);
        const Point2 nrm = polygon.outward_normal(e);
        const double jac = 0.5 * polygon.edge_length(e);
        for (int k = 0; k <= p; ++k) {
            const double t = 0.5 * (gl.nodes[static_cast<size_t>(k)] + 1.0);
            const Point2 x = a + t * (b - a);
            const double w = gl.weights[static_cast<size_t>(k)] * jac;
            mono.gradients_at(x, dx, dy);
            out.B.col(edge_node_dof(layout, e, k)) += w * (expansion * (nrm.x * dx + nrm.y * dy).transpose());
        }
    }
    if (m > 0) {
        // Delta q_a = sum_b C(a,b) q_b^M with C = T Lap M^{-1}
        const Eigen::MatrixXd lap = expansion * mono.laplacian_coefficients();
        const Eigen::MatrixXd C = moment.transpose().partialPivLu().solve(lap.transpose()).transpose();
        out.B.rightCols(m) -= area * C;
    }
    out.B.row(0) = p0_of_canonical(polygon, layout, moment);

    out.Gtilde = expansion * monomial_energy_matrix(polygon, p) * expansion.transpose();
    out.G = out.Gtilde;
    out.G.row(0) = p0_of_expansion(polygon, p, expansion, mass);
    return out;
}

ProjectionMatrices build_projection_matrices_orthonormal(const Polygon& polygon, int p,
                                                         const Eigen::MatrixXd& gs,
                                                         const Eigen::MatrixXd& mass) {
    const DofLayout layout = dof_layout(polygon, p);
    const int n = poly_space_dim(p);
    const int m = layout.internal_count();
    const int N = layout.total();
    const int nb = layout.boundary_count();
    const double area = polygon.area();

    // plain-monomial matrices first
    const int id_n = n;
    const ProjectionMatrices base =
        build_projection_matrices(polygon, p, Eigen::MatrixXd::Identity(m, m),
                                  Eigen::MatrixXd::Identity(id_n, id_n), mass);

    ProjectionMatrices out;
    out.Gtilde = gs * base.Gtilde * gs.transpose();

    // D: boundary rows transform with GS^T; internal rows collapse to
    // delta/|E| by L2 orthonormality of the basis.
    out.D.resize(N, n);
    out.D.topRows(nb) = base.D.topRows(nb) * gs.transpose();
    if (m > 0) {
        out.D.bottomRows(m).setZero();
        out.D.bottomRightCorner(m, n).block(0, 0, m, m) =
            Eigen::MatrixXd::Identity(m, m) / area;
    }

    // B: boundary columns transform with GS; internal columns come from the
    // Laplacian expansion F = L - Gtilde tested against the moment matrix C.
    out.B = Eigen::MatrixXd::Zero(n, N);
    out.B.leftCols(nb) = gs * base.B.leftCols(nb);
    if (m > 0) {
        const Eigen::MatrixXd Lbar = gs * boundary_derivative_matrix(polygon, p, Eigen::MatrixXd::Identity(n, n)) * gs.transpose();
        const Eigen::MatrixXd Fbar = Lbar - out.Gtilde;
        out.B.rightCols(m) = -area * Fbar.leftCols(m);
    }
    if (p == 1) {
        out.B.row(0) = base.B.row(0);
    } else {
        out.B.row(0).setZero();
        out.B(0, layout.internal_dof(0)) = 1.0 / gs(0, 0);
    }

    out.G = out.Gtilde;
    if (p == 1) {
        out.G.row(0) = base.G.row(0) * gs.transpose();
    } else {
        out.G.row(0).setZero();
        out.G(0, 0) = 1.0 / (gs(0, 0) * area);
    }
    return out;
}

Eigen::MatrixXd boundary_mass_matrix(const Polygon& polygon, int p) {
    const DofLayout layout = dof_layout(polygon, p);
    const int N = layout.total();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);

    const QuadratureRule1D gl = gauss_lobatto(p);
    const QuadratureRule1D gauss = gauss_legendre(p + 1);  // exact to 2p+1 >= 2p

    // barycentric weights of the Lagrange basis on the Gauss-Lobatto nodes
    const int nn = p + 1;
    Eigen::VectorXd bary(nn);
    for (int i = 0; i < nn; ++i) {
        double w = 1.0;
        for (int j = 0; j < nn; ++j)
            if (j != i) w *= gl.nodes[static_cast<size_t>(i)] - gl.nodes[static_cast<size_t>(j)];
        bary(i) = 1.0 / w;
    }
    // rows: Lagrange values at each Gauss point
    Eigen::MatrixXd lag(static_cast<int>(gauss.nodes.size()), nn);
    for (size_t g = 0; g < gauss.nodes.size(); ++g) {
        const double x = gauss.nodes[g];
        double prod = 1.0;
        int hit = -1;
        for (int i = 0; i < nn; ++i) {
            const double d = x - gl.nodes[static_cast<size_t>(i)];
            if (d == 0.0) hit = i;
            else prod *= d;
        }
        for (int i = 0; i < nn; ++i) {
            if (hit >= 0) lag(static_cast<int>(g), i) = (i == hit) ? 1.0 : 0.0;
            else lag(static_cast<int>(g), i) = prod * bary(i) / (x - gl.nodes[static_cast<size_t>(i)]);
        }
    }

    Eigen::MatrixXd local(nn, nn);
    for (int e = 0; e < polygon.num_vertices(); ++e) {
        const double jac = 0.5 * polygon.edge_length(e);
        local.setZero();
        for (size_t g = 0; g < gauss.nodes.size(); ++g)
            local += (gauss.weights[g] * jac) * lag.row(static_cast<int>(g)).transpose() * lag.row(static_cast<int>(g));
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j)
                M(edge_node_dof(layout, e, i), edge_node_dof(layout, e, j)) += local(i, j);
    }
    return M;
}

namespace {

Eigen::MatrixXd pi0_matrix(const DofLayout& layout, const Eigen::MatrixXd& moment_mass, double area) {
    const int m = layout.internal_count();
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, layout.total());
    rhs.rightCols(m) = area * Eigen::MatrixXd::Identity(m, m);
    return moment_mass.ldlt().solve(rhs);
}

} // namespace

Eigen::MatrixXd stabilization_matrix(const LocalOperators& ops, StabilizationKind kind) {
    const int N = ops.size();
    const DofLayout& layout = ops.layout;
    switch (kind) {
        case StabilizationKind::S1:
            return Eigen::MatrixXd::Identity(N, N);
        case StabilizationKind::S2: {
            const double h = ops.polygon.diameter();
            const double p = layout.degree;
            Eigen::MatrixXd S = (p / h) * boundary_mass_matrix(ops.polygon, layout.degree);
            if (layout.degree >= 2)
                S += (p * p / (h * h)) * ops.pi0.transpose() * ops.moment_mass * ops.pi0;
            return S;
        }
        case StabilizationKind::S3: {
            Eigen::VectorXd d = ops.consistency.diagonal().cwiseMax(1.0);
            return d.asDiagonal();
        }
        case StabilizationKind::S4: {
            Eigen::VectorXd d = Eigen::VectorXd::Zero(N);
            d.head(layout.boundary_count()).setOnes();
            return d.asDiagonal();
        }
    }
    throw Error("unknown stabilization kind");
}

LocalOperators build_local_operators(const Polygon& polygon, int p, MomentBasisKind kind,
                                     StabilizationKind stab) {
    LocalOperators ops{polygon, dof_layout(polygon, p), kind, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    const int m = ops.layout.internal_count();

    ops.mass = mass_matrix(polygon, p);
    switch (kind) {
        case MomentBasisKind::Monomial:
            ops.moment = Eigen::MatrixXd::Identity(m, m);
            ops.expansion = Eigen::MatrixXd::Identity(poly_space_dim(p), poly_space_dim(p));
            ops.proj = build_projection_matrices(polygon, p, ops.moment, ops.expansion, ops.mass);
            break;
        case MomentBasisKind::OrthoGS:
            ops.expansion = gram_schmidt_from_gram(ops.mass);
            ops.moment = ops.expansion.topLeftCorner(m, m);
            ops.proj = build_projection_matrices_orthonormal(polygon, p, ops.expansion, ops.mass);
            break;
        case MomentBasisKind::OrthoDiag:
            ops.expansion = diagonalization_from_gram(ops.mass);
            ops.moment = diagonalization_from_gram(ops.mass.topLeftCorner(m, m));
            ops.proj = build_projection_matrices(polygon, p, ops.moment, ops.expansion, ops.mass);
            break;
    }

    // Partial-pivot LU, as a backslash solve would do: strongly graded G
    // (collapsing elements, monomial basis) must still produce a projector,
    // however inaccurate -- that inaccuracy is the object of study. Only an
    // exactly singular G is an error.
    ops.pi_star = ops.proj.G.partialPivLu().solve(ops.proj.B);
    if (!ops.pi_star.allFinite())
        throw ConditioningError("projector matrix G is numerically singular");
    ops.pi = ops.proj.D * ops.pi_star;

    if (m > 0) {
        ops.moment_mass = ops.moment * ops.mass.topLeftCorner(m, m) * ops.moment.transpose();
        ops.pi0 = pi0_matrix(ops.layout, ops.moment_mass, polygon.area());
    }

    ops.consistency = ops.pi_star.transpose() * ops.proj.Gtilde * ops.pi_star;
    ops.stabilization = stabilization_matrix(ops, stab);
    const Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(ops.size(), ops.size()) - ops.pi;
    ops.stiffness = ops.consistency + residual.transpose() * ops.stabilization * residual;
    return ops;
}

Eigen::VectorXd local_load(const LocalOperators& ops, const ScalarField& f, int quad_degree) {
    const int p = ops.layout.degree;
    if (quad_degree < 0) quad_degree = std::max(2 * p + 4, 12);
    const QuadratureRule quad = polygon_quadrature(ops.polygon, quad_degree);

    Eigen::VectorXd b = Eigen::VectorXd::Zero(ops.size());
    if (p == 1) {
        double integral = 0.0;
        for (size_t q = 0; q < quad.nodes.size(); ++q) integral += quad.weights[q] * f(quad.nodes[q]);
        b.setConstant(integral / ops.layout.vertex_count);
        return b;
    }
    const ScaledMonomials mono(ops.polygon, p - 2);
    const int m = ops.layout.internal_count();
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
    for (size_t q = 0; q < quad.nodes.size(); ++q) {
        const Eigen::VectorXd vals = ops.moment * mono.values_at(quad.nodes[q]).transpose();
        g += (quad.weights[q] * f(quad.nodes[q])) * vals;
    }
    b = ops.pi0.transpose() * g;
    return b;
}

Eigen::VectorXd interpolate_dofs(const LocalOperators& ops, const ScalarField& f, int quad_degree) {
    const int p = ops.layout.degree;
    if (quad_degree < 0) quad_degree = std::max(2 * p + 4, 12);
    Eigen::VectorXd dofs(ops.size());
    const std::vector<Point2> bpts = boundary_dof_points(ops.polygon, p);
    for (int j = 0; j < ops.layout.boundary_count(); ++j) dofs(j) = f(bpts[static_cast<size_t>(j)]);

    const int m = ops.layout.internal_count();
    if (m > 0) {
        const ScaledMonomials mono(ops.polygon, p - 2);
        const QuadratureRule quad = polygon_quadrature(ops.polygon, quad_degree);
        Eigen::VectorXd mom = Eigen::VectorXd::Zero(m);
        for (size_t q = 0; q < quad.nodes.size(); ++q)
            mom += (quad.weights[q] * f(quad.nodes[q])) * (ops.moment * mono.values_at(quad.nodes[q]).transpose());
        dofs.tail(m) = mom / ops.polygon.area();
    }
    return dofs;
}

} // namespace polyvem
