#include "polyvem/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "polyvem/errors.hpp"

namespace polyvem {

Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a) {
    const int n = static_cast<int>(a.rows());
    constexpr double kRelTol = 1e-15;
    constexpr int kMaxSweeps = 60;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double gate = kRelTol * std::sqrt(std::abs(a(p, p) * a(q, q)));
                if (std::abs(apq) <= gate) continue;
                rotated = true;

                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = s * akp + c * akq;
                    a(q, k) = a(k, q);
                }
            }
        }
        if (!rotated) break;
    }

    Eigen::VectorXd eig = a.diagonal();
    std::sort(eig.data(), eig.data() + n);
    return eig;
}

SpectralSummary condition_number(const Eigen::MatrixXd& sym, int kernel_dim) {
    const int n = static_cast<int>(sym.rows());
    if (n == 0 || kernel_dim < 0 || kernel_dim >= n)
        throw Error("condition_number: kernel dimension out of range");

    Eigen::VectorXd eig;
    if (n <= 256) {
        eig = jacobi_eigenvalues(sym);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw ConditioningError("symmetric eigendecomposition failed");
        eig = solver.eigenvalues();
    }

    SpectralSummary s;
    s.kernel_dim = kernel_dim;
    s.lambda_max = eig(n - 1);
    s.lambda_min_nonzero = eig(kernel_dim);
    for (int i = 0; i < n; ++i)
        if (eig(i) < 1e-12 * s.lambda_max) ++s.numerically_zero;
    s.kernel_warning = s.numerically_zero > kernel_dim;
    s.condition = s.lambda_min_nonzero > 0.0 ? s.lambda_max / s.lambda_min_nonzero
                                             : std::numeric_limits<double>::infinity();
    return s;
}

} // namespace polyvem
