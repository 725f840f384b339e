#pragma once

#include <Eigen/Core>

namespace polyvem {

/// Eigenvalues of a symmetric matrix, ascending. Cyclic Jacobi with a
/// relative off-diagonal stopping criterion: graded SPD matrices (the
/// collapsing-element studies) keep high relative accuracy in their small
/// eigenvalues, which tridiagonalization-based solvers lose.
Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a);

struct SpectralSummary {
    double lambda_max = 0.0;
    double lambda_min_nonzero = 0.0;
    double condition = 0.0;
    int kernel_dim = 0;
    int numerically_zero = 0;  // eigenvalues below 1e-12 * lambda_max
    bool kernel_warning = false;
};

/// Full symmetric eigendecomposition; the kernel_dim smallest eigenvalues
/// are discarded as the known kernel and condition = lambda_max over the
/// next one. More numerically-zero eigenvalues than kernel_dim set the
/// warning flag. Jacobi is used up to 256 rows, Eigen's dense solver above.
SpectralSummary condition_number(const Eigen::MatrixXd& sym, int kernel_dim);

} // namespace polyvem
