#include "nefcone/siegel.hpp"

#include "nefcone/errors.hpp"

namespace nefcone {

namespace {

Eigen::VectorXd imag_spectrum(const ComplexMatrix& tau) {
    const Eigen::MatrixXd y = tau.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (y + y.transpose()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

} // namespace

double min_imag_eigenvalue(const ComplexMatrix& tau) {
    return imag_spectrum(tau).minCoeff();
}

double max_imag_eigenvalue(const ComplexMatrix& tau) {
    return imag_spectrum(tau).maxCoeff();
}

bool in_siegel_space(const ComplexMatrix& tau, double tolerance) {
    if (tau.rows() != tau.cols() || tau.rows() == 0) {
        return false;
    }
    if ((tau - tau.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + tau.cwiseAbs().maxCoeff())) {
        return false;
    }
    return min_imag_eigenvalue(tau) > tolerance;
}

void require_siegel(const ComplexMatrix& tau, double tolerance) {
    if (!in_siegel_space(tau, tolerance)) {
        throw PreconditionError("period matrix is not in Siegel space (symmetric with positive definite imaginary part)");
    }
}

bool is_symplectic(const IntMatrix& gamma) {
    if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0) {
        return false;
    }
    const std::size_t g = gamma.rows() / 2;
    IntMatrix j(2 * g, 2 * g);
    for (std::size_t i = 0; i < g; ++i) {
        j(i, g + i) = 1;
        j(g + i, i) = -1;
    }
    return gamma.transpose() * j * gamma == j;
}

SymplecticBlocks blocks(const IntMatrix& gamma) {
    if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0) {
        throw DimensionError("symplectic matrix must be 2g x 2g");
    }
    const auto g = static_cast<Eigen::Index>(gamma.rows() / 2);
    SymplecticBlocks out{ComplexMatrix(g, g), ComplexMatrix(g, g), ComplexMatrix(g, g), ComplexMatrix(g, g)};
    for (Eigen::Index i = 0; i < g; ++i) {
        for (Eigen::Index j = 0; j < g; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            const auto ug = static_cast<std::size_t>(g);
            out.a(i, j) = gamma(ui, uj).get_d();
            out.b(i, j) = gamma(ui, ug + uj).get_d();
            out.c(i, j) = gamma(ug + ui, uj).get_d();
            out.d(i, j) = gamma(ug + ui, ug + uj).get_d();
        }
    }
    return out;
}

ComplexMatrix symplectic_act(const IntMatrix& gamma, const ComplexMatrix& tau) {
    const auto bl = blocks(gamma);
    if (bl.a.rows() != tau.rows()) {
        throw DimensionError("symplectic matrix and period matrix sizes differ");
    }
    const ComplexMatrix denom = bl.c * tau + bl.d;
    Eigen::FullPivLU<ComplexMatrix> lu(denom);
    if (!lu.isInvertible()) {
        throw PreconditionError("C tau + D is singular");
    }
    return (bl.a * tau + bl.b) * lu.inverse();
}

} // namespace nefcone
