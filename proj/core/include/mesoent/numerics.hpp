#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace mesoent {

using cd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace tol {
// Every tolerance used across the library. All matrices here are at most
// 16x16 and O(1)-scaled, so fixed absolute thresholds are adequate.
inline constexpr double kStructural = 1e-12;
inline constexpr double kSpectral = 1e-9;
inline constexpr double kDynamics = 1e-8;
inline constexpr double kClosure = 1e-10;
}  // namespace tol

namespace numerics {

/// e^{tA} by Pade scaling-and-squaring. Throws ContractViolation for a
/// non-square A, DomainError for non-finite t or entries.
ComplexMatrix expm(const ComplexMatrix& a, double t = 1.0);

/// Ascending eigenvalues of a Hermitian matrix. Input must be Hermitian to
/// within tol::kStructural (relative to its scale).
std::vector<double> eig_hermitian(const ComplexMatrix& a);

/// Eigenvalues of a general square matrix (size <= 8 is the supported range,
/// larger inputs work but are not tuned). Throws NumericError on
/// non-convergence or when an eigenpair residual exceeds tol::kSpectral.
std::vector<cd> eig_general(const ComplexMatrix& a);

bool all_finite(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tolerance = tol::kStructural);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace numerics
}  // namespace mesoent
