#pragma once

#include <array>

#include "mesoent/spin_algebra.hpp"

namespace mesoent {

using Matrix8cd = Eigen::Matrix<cd, 8, 8>;
using Vector4cd = Eigen::Matrix<cd, 4, 1>;
using Vector8cd = Eigen::Matrix<cd, 8, 1>;

/// Mode ordering used everywhere: a1, a2, b1, b2. In doubled (z, z*) vectors
/// the creation partner of mode k sits at index k + 4.
enum class Mode : int { a1 = 0, a2 = 1, b1 = 2, b2 = 3 };

constexpr int index_of(Mode m) noexcept { return static_cast<int>(m); }
constexpr int creation_index(Mode m) noexcept { return static_cast<int>(m) + 4; }

/// Linear map from the fluctuations X~_1..X~_8 to the doubled mode vector
/// (a1, a2, b1, b2, a1^dag, a2^dag, b1^dag, b2^dag): row i holds the
/// coefficients of mode i on the X~'s.
///
///   a1 = (X~1 - i X~2) / (2 sqrt(eta))
///   a2 = sqrt(eta) / (2 sqrt(1 - eta^2)) * [X~1 - i X~2 + (X~3 - i X~4) / eta]
///
/// and b1, b2 by the shift X~_alpha -> X~_{alpha+4}.
struct ModeMap {
  Matrix8cd coefficients;
  Matrix8cd inverse;
  double eta;
  double eta_complement;  // sqrt(1 - eta^2)
  double one_minus_eta;

  /// Site operator sum_alpha coefficients(i, alpha) x_alpha whose fluctuation
  /// is mode i, assembled in product form:
  ///   a1 = s- (x) 1 / sqrt(eta),
  ///   a2 = sqrt(eta)/sqrt(1-eta^2) s- (x) diag((1+eta)/eta, -(1-eta)/eta),
  /// b1, b2 with the chains exchanged, creation modes as adjoints. The
  /// product form keeps the small diagonal entry accurate as eta -> 1.
  SiteOperator site_operator(int i) const;
};

ModeMap build_mode_map(const ModelParams& p);
/// `eta_complement` = sqrt(1 - eta^2); pass it when it is known more
/// accurately than the subtraction would give (eta close to 1).
ModeMap build_mode_map(double eta, double eta_complement, double one_minus_eta);
ModeMap build_mode_map(double eta);

/// Commutators between modes computed from the fluctuation form alone,
/// [m~_i, m~_j^dag] = <c_i^dag, c_j^dag> - <c_j, c_i> on the site operators c_i.
/// `mixed(i, j)` = [m_i, m_j^dag], `plain(i, j)` = [m_i, m_j] for the four
/// annihilation modes. Canonical: mixed = I, plain = 0.
struct ModeCommutators {
  Eigen::Matrix4cd mixed;
  Eigen::Matrix4cd plain;
};

ModeCommutators mode_commutators(const ModeMap& map, const ThermalSiteState& st);

/// Weyl argument z = (z_a1, z_a2, z_b1, z_b2) of W(z) = exp(A(z)^dag - A(z)),
/// A(z) = sum_i z_i m_i.
using WeylVector = Vector4cd;

/// dz/dt = M z with
///   M = -(1 + i eps) I + gamma K,
///   K = [[0, 0, -eta, c], [0, 0, c, eta], [-eta, c, 0, 0], [c, eta, 0, 0]],
///   c = sqrt(1 - eta^2), K^2 = I.
struct MesoGenerator {
  Eigen::Matrix4cd m;
  double eta;
  double epsilon;
  double gamma;

  /// e^{tM}
  Eigen::Matrix4cd flow(double t) const;
  WeylVector evolve(const WeylVector& z, double t) const;
  /// phi(t) = (<z(t)|z(t)> - <z|z>) / (2 eta); never positive for t >= 0.
  double phi(const WeylVector& z, double t) const;
};

Eigen::Matrix4d coupling_matrix(double eta, double eta_complement);
MesoGenerator build_meso_generator(const ModelParams& p);

/// Zero-mean Gaussian state of the four modes through its characteristic
/// function chi(z) = <W(z)> = exp(-1/2 v^dag Gamma v), v = (z, z*).
///
/// Block dictionary (S_ij = 1/2 <{m_i, m_j^dag}>, P_ij = <m_i m_j>):
///   Gamma = [[conj(S), -conj(P)], [-P, S]]
/// The thermal state of the fluctuation modes is Gamma = I / (2 eta).
class FluctuationGaussianState {
 public:
  FluctuationGaussianState(Matrix8cd gamma, double eta);

  static FluctuationGaussianState thermal(double eta);
  static FluctuationGaussianState from_moments(const Eigen::Matrix4cd& symmetrized,
                                               const Eigen::Matrix4cd& anomalous, double eta);

  const Matrix8cd& gamma() const noexcept { return gamma_; }
  double eta() const noexcept { return eta_; }

  Eigen::Matrix4cd symmetrized_moments() const;  // S
  Eigen::Matrix4cd anomalous_moments() const;    // P
  cd characteristic(const WeylVector& z) const;

  /// max |Gamma - Lambda conj(Gamma) Lambda|, Lambda the (z, z*) block swap.
  double swap_asymmetry() const;

 private:
  Matrix8cd gamma_;
  double eta_;
};

/// Thermal state of all four modes with a1 and b1 each squeezed by the same
/// real r (m -> cosh r m - sinh r m^dag):
///   S_kk = cosh(2r)/(2 eta), P_kk = -sinh(2r)/(2 eta) for k in {a1, b1}.
FluctuationGaussianState initial_state(const ModelParams& p, double squeeze_r);

/// Gamma(t) = T^dag (Gamma_0 - I/(2 eta)) T + I/(2 eta), T = e^{tM} (+) e^{tM*}.
FluctuationGaussianState propagate(const FluctuationGaussianState& s, const MesoGenerator& g, double t);

/// Gamma(t) - I/(2 eta) without the cancellation of forming Gamma(t) first.
Matrix8cd deviation_from_thermal(const FluctuationGaussianState& s, const MesoGenerator& g, double t);

}  // namespace mesoent
