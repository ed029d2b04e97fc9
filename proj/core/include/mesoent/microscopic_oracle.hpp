#pragma once

#include <array>
#include <cstdint>

#include "mesoent/mesoscopic.hpp"
#include "mesoent/spin_algebra.hpp"

namespace mesoent {

using Matrix16cd = Eigen::Matrix<cd, 16, 16>;
using Vector16cd = Eigen::Matrix<cd, 16, 1>;

/// Normalization of the double-commutator dissipator. With 1/2 the
/// fluctuation-mode generator reproduces the unit damping of M; 1 is the
/// bare sum_{mu,nu} D_{mu nu} [[V_mu, X], V_nu^dag].
inline constexpr double kDissipatorScale = 0.5;

/// Heisenberg-picture single-site generator acting on column-stacked 4x4
/// operators: vec(A X B) = (B^T (x) A) vec(X).
struct Superoperator {
  Matrix16cd matrix;

  SiteOperator apply(const SiteOperator& x) const;
};

Vector16cd vectorize(const SiteOperator& x);
SiteOperator unvectorize(const Vector16cd& v);

/// L[X] = i[H, X] + scale * sum_{mu,nu} D_{mu nu} [[V_mu, X], V_nu^dag]
/// with the site-diagonal coupling J_kl = delta_kl.
Superoperator build_liouvillian(const ModelParams& p, double dissipator_scale = kDissipatorScale);

/// The same generator evaluated directly on an operator, without the
/// superoperator matrix. Used to cross-check build_liouvillian.
SiteOperator apply_liouvillian_direct(const ModelParams& p, const SiteOperator& x,
                                      double dissipator_scale = kDissipatorScale);

/// max_b |Tr(rho_th L[b])| over the 16 Pauli products.
double stationarity_residual(const Superoperator& l, const ThermalSiteState& st);

struct GeneratorExtraction {
  /// L[x_alpha] = sum_beta observable_generator(alpha, beta) x_beta + identity_coeffs[alpha] 1 + remainder
  Matrix8cd observable_generator;
  /// Largest Hilbert-Schmidt norm of a remainder.
  double residual = 0.0;
  std::array<cd, 8> identity_coeffs{};
  /// Same action in the doubled mode basis (a1, a2, b1, b2, a1^dag, ...):
  /// L[m_i] = sum_j mode_generator(i, j) m_j. The annihilation block equals M^T.
  Matrix8cd mode_generator;

  Eigen::Matrix4cd annihilation_block() const { return mode_generator.topLeftCorner<4, 4>(); }
  Eigen::Matrix4cd creation_block() const { return mode_generator.bottomRightCorner<4, 4>(); }
  /// max |entry| of the blocks that would mix annihilators with creators.
  double sector_mixing() const;
};

/// Projects L onto span{x_1..x_8, 1} with <u, v> = Tr(u^dag v)/4.
/// Throws ClosureViolation when the remainder or any identity coefficient
/// exceeds tol::kClosure.
GeneratorExtraction extract_mode_generator(const Superoperator& l, const ModelParams& p);

/// omega(exp(i X~_N)) = [omega(exp(i (x - omega(x)) / sqrt(N)))]^N, exact for the product state.
cd weyl_expectation_finite_N(const SiteOperator& x, std::uint64_t n, const ThermalSiteState& st);

/// omega(exp(i X~_N) exp(i Y~_N)) at finite N.
cd weyl_product_finite_N(const SiteOperator& x, const SiteOperator& y, std::uint64_t n, const ThermalSiteState& st);

/// exp(-<X~, X~>/2)
cd weyl_expectation_limit(const SiteOperator& x, const ThermalSiteState& st);

/// exp(-(<X~+Y~, X~+Y~> + [X~, Y~]) / 2)
cd weyl_product_limit(const SiteOperator& x, const SiteOperator& y, const ThermalSiteState& st);

}  // namespace mesoent
