#pragma once

#include <array>
#include <string>

#include "mesoent/numerics.hpp"

namespace mesoent {

using Matrix4cd = Eigen::Matrix<cd, 4, 4>;
using Matrix4d = Eigen::Matrix4d;

/// Physical inputs of the double-chain model, k_B = hbar = 1.
///
/// Construct through ModelParams::make, which enforces
///   epsilon > 0, T > 0, 0 <= gamma <= 1/2, and 0 < eta < 1 in floating point.
/// The last condition rejects temperatures so low that tanh(eps/2T) rounds to 1,
/// where the fluctuation algebra contracts to the a1/b1 modes only.
class ModelParams {
 public:
  static ModelParams make(double epsilon, double temperature, double gamma);

  double epsilon() const noexcept { return epsilon_; }
  double temperature() const noexcept { return temperature_; }
  double gamma() const noexcept { return gamma_; }
  double beta() const noexcept { return beta_; }
  double eta() const noexcept { return eta_; }

  /// sqrt(1 - eta^2) = sech(eps beta / 2), evaluated without cancellation.
  double eta_complement() const noexcept { return eta_complement_; }
  /// 1 - eta, evaluated without cancellation.
  double one_minus_eta() const noexcept { return one_minus_eta_; }

 private:
  ModelParams(double epsilon, double temperature, double gamma);

  double epsilon_;
  double temperature_;
  double gamma_;
  double beta_;
  double eta_;
  double eta_complement_;
  double one_minus_eta_;
};

/// Element of the 16-dimensional site algebra M = M_2 (x) M_2, written in the
/// product basis |up up>, |up down>, |down up>, |down down>.
struct SiteOperator {
  Matrix4cd matrix = Matrix4cd::Zero();
  std::string label;

  SiteOperator() = default;
  explicit SiteOperator(Matrix4cd m, std::string l = {}) : matrix(std::move(m)), label(std::move(l)) {}

  SiteOperator adjoint() const { return SiteOperator(matrix.adjoint()); }
  bool is_hermitian(double tolerance = tol::kStructural) const;

  friend SiteOperator operator*(const SiteOperator& a, const SiteOperator& b) {
    return SiteOperator(a.matrix * b.matrix);
  }
  friend SiteOperator operator+(const SiteOperator& a, const SiteOperator& b) {
    return SiteOperator(a.matrix + b.matrix);
  }
  friend SiteOperator operator-(const SiteOperator& a, const SiteOperator& b) {
    return SiteOperator(a.matrix - b.matrix);
  }
  friend SiteOperator operator*(cd s, const SiteOperator& a) { return SiteOperator(s * a.matrix); }
};

SiteOperator commutator(const SiteOperator& a, const SiteOperator& b);

/// sigma_mu (x) sigma_nu, mu, nu in 0..3, labelled "mu nu".
SiteOperator pauli_product(int mu, int nu);
const Eigen::Matrix2cd& pauli(int mu);

/// Coefficients c[4*mu + nu] with op = sum c * sigma_mu (x) sigma_nu.
std::array<cd, 16> pauli_coefficients(const SiteOperator& op);
SiteOperator from_pauli_coefficients(const std::array<cd, 16>& coeffs);

/// The eight observables x_1..x_8 whose fluctuations carry the four modes:
///   s1 s0, s2 s0, s1 s3, s2 s3, s0 s1, s0 s2, s3 s1, s3 s2.
const std::array<SiteOperator, 8>& fluctuation_observables();

/// The remaining eight Pauli products, whose fluctuations commute with the above.
const std::array<SiteOperator, 8>& complementary_observables();

struct DissipationMatrix {
  Matrix4d coefficients;
  std::array<double, 4> eigenvalues;  // ascending
  double min_eigenvalue;
  bool positive_semidefinite;
};

struct ThermalSiteState {
  SiteOperator rho;
  double partition_function;

  cd expectation(const SiteOperator& op) const { return (rho.matrix * op.matrix).trace(); }
};

/// H = (eps/2)(s3 s0 + s0 s3).
SiteOperator build_site_hamiltonian(const ModelParams& p);

/// e^{-beta H}/Z; <s3 s0> = -eta.
ThermalSiteState build_thermal_state(const ModelParams& p);

/// Lindblad operators {s+ s-, s- s+, s3 s0 / 2, s0 s3 / 2}, s+- = (s1 +- i s2)/2.
std::array<SiteOperator, 4> build_lindblad_ops(const ModelParams& p);

/// Noise matrix with unit diagonal and gamma coupling each flip-flop operator
/// to each dephasing operator. Accepts any real gamma; positivity is reported
/// in the result rather than enforced.
DissipationMatrix build_dissipation_matrix(double gamma);

/// Thermodynamic-limit sesquilinear form of two fluctuation operators in the
/// product state: omega(x^dag y) - omega(x^dag) omega(y).
cd fluctuation_inner(const SiteOperator& x, const SiteOperator& y, const ThermalSiteState& st);

/// [X~, Y~] = 2i Im <X~, Y~> (a multiple of the identity) for Hermitian x, y.
cd fluctuation_commutator(const SiteOperator& x, const SiteOperator& y, const ThermalSiteState& st);

}  // namespace mesoent
