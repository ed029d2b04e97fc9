#include "mesoent/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "mesoent/errors.hpp"

namespace mesoent::numerics {

namespace {

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << who << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw ContractViolation(os.str());
  }
}

}  // namespace

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cd v = a.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

bool is_hermitian(const ComplexMatrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tolerance * scale;
}

ComplexMatrix expm(const ComplexMatrix& a, double t) {
  require_square(a, "expm");
  if (!std::isfinite(t) || !all_finite(a)) throw DomainError("expm: non-finite input");
  if (a.size() == 0) return a;
  if (t == 0.0) return ComplexMatrix::Identity(a.rows(), a.cols());
  const ComplexMatrix scaled = t * a;
  return scaled.exp();
}

std::vector<double> eig_hermitian(const ComplexMatrix& a) {
  require_square(a, "eig_hermitian");
  if (!is_hermitian(a)) throw ContractViolation("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eig_hermitian: solver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<cd> eig_general(const ComplexMatrix& a) {
  require_square(a, "eig_general");
  if (!all_finite(a)) throw DomainError("eig_general: non-finite input");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, true);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eig_general: QR iteration failed to converge on a " << a.rows() << "x" << a.cols()
       << " matrix (max |a_ij| = " << a.cwiseAbs().maxCoeff() << ")";
    throw NumericError(os.str());
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  std::vector<cd> out;
  out.reserve(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const cd lambda = solver.eigenvalues()(k);
    const ComplexVector v = solver.eigenvectors().col(k);
    const double residual = (a * v - lambda * v).norm() / std::max(v.norm(), 1e-300);
    if (residual > tol::kSpectral * scale) {
      std::ostringstream os;
      os << "eig_general: eigenpair residual " << residual << " for lambda = " << lambda;
      throw NumericError(os.str());
    }
    out.push_back(lambda);
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ContractViolation("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace mesoent::numerics
