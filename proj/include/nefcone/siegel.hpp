#pragma once

// Floating-point helpers on Siegel space H_g and the symplectic action.

#include "nefcone/matrix.hpp"

#include <Eigen/Dense>

#include <complex>

namespace nefcone {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexRow = Eigen::RowVectorXcd;

/// Membership tolerance for H_g: smallest eigenvalue of Im(tau) must exceed it.
inline constexpr double kSiegelTolerance = 1e-9;

double min_imag_eigenvalue(const ComplexMatrix& tau);
double max_imag_eigenvalue(const ComplexMatrix& tau);
bool in_siegel_space(const ComplexMatrix& tau, double tolerance = kSiegelTolerance);
/// Throws PreconditionError unless tau is square, symmetric and in H_g.
void require_siegel(const ComplexMatrix& tau, double tolerance = kSiegelTolerance);

/// True iff t(gamma) J gamma = J for J = ((0, 1), (-1, 0)); exact.
bool is_symplectic(const IntMatrix& gamma);

struct SymplecticBlocks {
    ComplexMatrix a, b, c, d;
};
SymplecticBlocks blocks(const IntMatrix& gamma);

/// gamma(tau) = (A tau + B)(C tau + D)^-1.
ComplexMatrix symplectic_act(const IntMatrix& gamma, const ComplexMatrix& tau);

} // namespace nefcone
