#include "mesoent/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mesoent/errors.hpp"

namespace mesoent {

namespace {

using Matrix2cd = Eigen::Matrix2cd;
constexpr cd kI{0.0, 1.0};

Matrix4cd tensor(const Matrix2cd& a, const Matrix2cd& b) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

const std::array<Matrix2cd, 4>& pauli_table() {
  static const std::array<Matrix2cd, 4> table = [] {
    std::array<Matrix2cd, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -kI, kI, 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return table;
}

Matrix2cd sigma_plus() { return (pauli(1) + kI * pauli(2)) / 2.0; }
Matrix2cd sigma_minus() { return (pauli(1) - kI * pauli(2)) / 2.0; }

}  // namespace

ModelParams::ModelParams(double epsilon, double temperature, double gamma)
    : epsilon_(epsilon),
      temperature_(temperature),
      gamma_(gamma),
      beta_(1.0 / temperature),
      eta_(std::tanh(epsilon * beta_ / 2.0)),
      eta_complement_(1.0 / std::cosh(epsilon * beta_ / 2.0)),
      one_minus_eta_(2.0 / (1.0 + std::exp(epsilon * beta_))) {}

ModelParams ModelParams::make(double epsilon, double temperature, double gamma) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0)
    throw DomainError("epsilon must be finite and > 0");
  if (!std::isfinite(temperature) || temperature <= 0.0)
    throw DomainError("temperature must be finite and > 0 (the zero-temperature fluctuation algebra contracts)");
  if (!std::isfinite(gamma) || gamma < 0.0 || gamma > 0.5)
    throw DomainError("gamma must lie in [0, 1/2] (complete positivity)");
  ModelParams p(epsilon, temperature, gamma);
  if (!(p.eta_ > 0.0) || !(p.eta_ < 1.0)) {
    std::ostringstream os;
    os << "eta = tanh(eps/2T) = " << p.eta_ << " is not inside (0, 1); temperature " << temperature
       << " is too low to resolve the a2/b2 modes in double precision";
    throw DomainError(os.str());
  }
  return p;
}

bool SiteOperator::is_hermitian(double tolerance) const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

SiteOperator commutator(const SiteOperator& a, const SiteOperator& b) {
  return SiteOperator(a.matrix * b.matrix - b.matrix * a.matrix);
}

const Eigen::Matrix2cd& pauli(int mu) {
  if (mu < 0 || mu > 3) throw ContractViolation("pauli: index out of range");
  return pauli_table()[static_cast<std::size_t>(mu)];
}

SiteOperator pauli_product(int mu, int nu) {
  return SiteOperator(tensor(pauli(mu), pauli(nu)), "s" + std::to_string(mu) + "s" + std::to_string(nu));
}

std::array<cd, 16> pauli_coefficients(const SiteOperator& op) {
  std::array<cd, 16> c{};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      c[static_cast<std::size_t>(4 * mu + nu)] = (pauli_product(mu, nu).matrix * op.matrix).trace() / 4.0;
  return c;
}

SiteOperator from_pauli_coefficients(const std::array<cd, 16>& coeffs) {
  Matrix4cd m = Matrix4cd::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) m += coeffs[static_cast<std::size_t>(4 * mu + nu)] * pauli_product(mu, nu).matrix;
  return SiteOperator(m);
}

const std::array<SiteOperator, 8>& fluctuation_observables() {
  static const std::array<SiteOperator, 8> xs = {
      pauli_product(1, 0), pauli_product(2, 0), pauli_product(1, 3), pauli_product(2, 3),
      pauli_product(0, 1), pauli_product(0, 2), pauli_product(3, 1), pauli_product(3, 2),
  };
  return xs;
}

const std::array<SiteOperator, 8>& complementary_observables() {
  static const std::array<SiteOperator, 8> ys = {
      pauli_product(0, 0), pauli_product(3, 0), pauli_product(0, 3), pauli_product(3, 3),
      pauli_product(1, 1), pauli_product(1, 2), pauli_product(2, 1), pauli_product(2, 2),
  };
  return ys;
}

SiteOperator build_site_hamiltonian(const ModelParams& p) {
  const Matrix4cd h = (p.epsilon() / 2.0) * (tensor(pauli(3), pauli(0)) + tensor(pauli(0), pauli(3)));
  return SiteOperator(h, "H");
}

ThermalSiteState build_thermal_state(const ModelParams& p) {
  // H is diagonal in the product basis; shift by the ground energy so the
  // Boltzmann weights stay in range.
  const Matrix4cd h = build_site_hamiltonian(p).matrix;
  const double e0 = -p.epsilon();
  Matrix4cd rho = Matrix4cd::Zero();
  double weight_sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double w = std::exp(-p.beta() * (h(k, k).real() - e0));
    rho(k, k) = w;
    weight_sum += w;
  }
  rho /= weight_sum;
  const double z = weight_sum * std::exp(-p.beta() * e0);
  return ThermalSiteState{SiteOperator(rho, "rho_th"), z};
}

std::array<SiteOperator, 4> build_lindblad_ops(const ModelParams& /*p*/) {
  return {
      SiteOperator(tensor(sigma_plus(), sigma_minus()), "V1"),
      SiteOperator(tensor(sigma_minus(), sigma_plus()), "V2"),
      SiteOperator(tensor(pauli(3), pauli(0)) / 2.0, "V3"),
      SiteOperator(tensor(pauli(0), pauli(3)) / 2.0, "V4"),
  };
}

DissipationMatrix build_dissipation_matrix(double gamma) {
  DissipationMatrix d;
  d.coefficients << 1, 0, gamma, gamma,  //
      0, 1, gamma, gamma,                //
      gamma, gamma, 1, 0,                //
      gamma, gamma, 0, 1;
  const auto ev = numerics::eig_hermitian(d.coefficients.cast<cd>());
  std::copy(ev.begin(), ev.end(), d.eigenvalues.begin());
  d.min_eigenvalue = d.eigenvalues.front();
  d.positive_semidefinite = d.min_eigenvalue >= -tol::kStructural;
  return d;
}

cd fluctuation_inner(const SiteOperator& x, const SiteOperator& y, const ThermalSiteState& st) {
  const SiteOperator xd = x.adjoint();
  return st.expectation(xd * y) - st.expectation(xd) * st.expectation(y);
}

cd fluctuation_commutator(const SiteOperator& x, const SiteOperator& y, const ThermalSiteState& st) {
  return cd(0.0, 2.0 * fluctuation_inner(x, y, st).imag());
}

}  // namespace mesoent
