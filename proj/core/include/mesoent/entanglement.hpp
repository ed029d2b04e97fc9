#pragma once

#include <vector>

#include "mesoent/mesoscopic.hpp"

namespace mesoent {

/// Rows/columns of Gamma for (a1, a1^dag, b1, b1^dag), in that order.
struct MomentBlock {
  Eigen::Matrix4cd entries;
};

/// Symmetrized quadrature covariance over (x_a, p_a, x_b, p_b), with
/// x = (m + m^dag)/sqrt(2), p = (m - m^dag)/(i sqrt(2)), scaled by 2 so the
/// vacuum is the identity.
struct QuadratureCovariance {
  Eigen::Matrix4d sigma;

  Eigen::Matrix2d block_a() const { return sigma.topLeftCorner<2, 2>(); }
  Eigen::Matrix2d block_b() const { return sigma.bottomRightCorner<2, 2>(); }
  Eigen::Matrix2d cross() const { return sigma.topRightCorner<2, 2>(); }
};

struct SymplecticPt {
  double closed_form;  // from the 2x2-block invariants
  double spectral;     // min |spec(i Omega sigma~)|
};

struct NegativityResult {
  double nu_min;
  double log_negativity;
};

MomentBlock reduce_to_a1b1(const FluctuationGaussianState& s);

/// Throws ContractViolation if the block breaks the (m <-> m^dag) swap
/// symmetry by more than 1e-10.
QuadratureCovariance to_quadrature(const MomentBlock& block);

/// Vacuum-normalized quadrature covariance of all four modes,
/// ordered (x_a1, p_a1, x_a2, p_a2, x_b1, p_b1, x_b2, p_b2).
Eigen::Matrix<double, 8, 8> full_quadrature(const FluctuationGaussianState& s);

/// Standard symplectic form diag(J, J, ...), J = [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int modes);

/// |spec(i Omega sigma)|, ascending, each symplectic eigenvalue listed once.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma);

/// Both routes to the smallest symplectic eigenvalue of the partial
/// transpose (p_b -> -p_b), without the agreement check.
SymplecticPt symplectic_pt_routes(const QuadratureCovariance& q);

/// Smallest partially transposed symplectic eigenvalue; separable iff >= 1.
/// Returns the closed form; throws NumericError when the spectral route
/// disagrees by more than 1e-9.
double min_symplectic_pt(const QuadratureCovariance& q);

/// max{0, -ln nu}; nu must be positive and finite.
double log_negativity(double nu_min);

NegativityResult negativity(const FluctuationGaussianState& s);

}  // namespace mesoent
