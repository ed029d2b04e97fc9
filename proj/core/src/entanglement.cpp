#include "mesoent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mesoent/errors.hpp"

namespace mesoent {

namespace {

constexpr cd kI{0.0, 1.0};

// Quadrature q = f m + conj(f) m^dag; x has f = 1/sqrt(2), p has f = -i/sqrt(2).
const std::array<cd, 2>& quadrature_weights() {
  static const std::array<cd, 2> w = {cd(M_SQRT1_2, 0.0), cd(0.0, -M_SQRT1_2)};
  return w;
}

// 2 * 1/2 <{q_u, q_w}> = 4 Re(f g P + f conj(g) S) for q_u on mode i, q_w on mode j.
template <int Modes>
Eigen::Matrix<double, 2 * Modes, 2 * Modes> quadrature_from_moments(const Eigen::Matrix<cd, Modes, Modes>& s,
                                                                    const Eigen::Matrix<cd, Modes, Modes>& p) {
  Eigen::Matrix<double, 2 * Modes, 2 * Modes> sigma;
  const auto& w = quadrature_weights();
  for (int i = 0; i < Modes; ++i)
    for (int u = 0; u < 2; ++u)
      for (int j = 0; j < Modes; ++j)
        for (int v = 0; v < 2; ++v) {
          const cd f = w[static_cast<std::size_t>(u)];
          const cd g = w[static_cast<std::size_t>(v)];
          sigma(2 * i + u, 2 * j + v) = 4.0 * (f * g * p(i, j) + f * std::conj(g) * s(i, j)).real();
        }
  return 0.5 * (sigma + sigma.transpose());
}

}  // namespace

MomentBlock reduce_to_a1b1(const FluctuationGaussianState& s) {
  const std::array<int, 4> idx = {index_of(Mode::a1), creation_index(Mode::a1), index_of(Mode::b1),
                                  creation_index(Mode::b1)};
  MomentBlock out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.entries(r, c) = s.gamma()(idx[r], idx[c]);
  return out;
}

QuadratureCovariance to_quadrature(const MomentBlock& block) {
  Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
  swap(0, 1) = swap(1, 0) = swap(2, 3) = swap(3, 2) = 1.0;
  const double asym = (block.entries - swap * block.entries.conjugate() * swap).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    std::ostringstream os;
    os << "to_quadrature: moment block breaks the swap symmetry by " << asym;
    throw ContractViolation(os.str());
  }
  // Gamma_11 = conj(S), Gamma_21 = -P restricted to (a1, b1).
  Eigen::Matrix2cd s;
  Eigen::Matrix2cd p;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      s(i, j) = std::conj(block.entries(2 * i, 2 * j));
      p(i, j) = -block.entries(2 * i + 1, 2 * j);
    }
  return QuadratureCovariance{quadrature_from_moments<2>(s, p)};
}

Eigen::Matrix<double, 8, 8> full_quadrature(const FluctuationGaussianState& s) {
  return quadrature_from_moments<4>(s.symmetrized_moments(), s.anomalous_moments());
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() % 2 != 0)
    throw ContractViolation("symplectic_eigenvalues: expected an even square matrix");
  const int modes = static_cast<int>(sigma.rows() / 2);
  const ComplexMatrix a = kI * (symplectic_form(modes) * sigma).cast<cd>();
  std::vector<double> mags;
  for (const cd l : numerics::eig_general(a)) mags.push_back(std::abs(l));
  std::sort(mags.begin(), mags.end());
  // Eigenvalues come in +-nu pairs.
  std::vector<double> out;
  for (std::size_t k = 0; k < mags.size(); k += 2) out.push_back(0.5 * (mags[k] + mags[k + 1]));
  return out;
}

SymplecticPt symplectic_pt_routes(const QuadratureCovariance& q) {
  Eigen::Matrix4d flip = Eigen::Matrix4d::Identity();
  flip(3, 3) = -1.0;
  const Eigen::Matrix4d transposed = flip * q.sigma * flip;

  const double delta = q.block_a().determinant() + q.block_b().determinant() - 2.0 * q.cross().determinant();
  // Delta~^2 - 4 det sigma equals tr((N - Delta~/2)^2) with N = -(Omega sigma~)^2,
  // whose spectrum is {nu_-^2, nu_+^2} twice each. The trace form has no
  // cancellation when nu_- ~ nu_+.
  const Eigen::Matrix4d omega = symplectic_form(2);
  const Eigen::Matrix4d n = -(omega * transposed) * (omega * transposed);
  const Eigen::Matrix4d shifted = n - 0.5 * delta * Eigen::Matrix4d::Identity();
  const double disc = std::max(0.0, (shifted * shifted).trace());
  // nu_-^2 nu_+^2 = det sigma, so nu_-^2 = 2 det / (Delta~ + sqrt(disc)) avoids
  // the cancellation of (Delta~ - sqrt(disc)) / 2 for strongly entangled states.
  const double denom = delta + std::sqrt(disc);
  const double nu_sq = denom > 0.0 ? 2.0 * q.sigma.determinant() / denom : 0.0;

  SymplecticPt out{};
  out.closed_form = std::sqrt(std::max(0.0, nu_sq));
  out.spectral = symplectic_eigenvalues(transposed).front();
  return out;
}

double min_symplectic_pt(const QuadratureCovariance& q) {
  const SymplecticPt r = symplectic_pt_routes(q);
  if (std::abs(r.closed_form - r.spectral) > tol::kSpectral * std::max(1.0, r.spectral)) {
    std::ostringstream os;
    os.precision(17);
    os << "min_symplectic_pt: closed form " << r.closed_form << " and spectral " << r.spectral << " disagree";
    throw NumericError(os.str());
  }
  return r.closed_form;
}

double log_negativity(double nu_min) {
  if (!std::isfinite(nu_min) || nu_min <= 0.0)
    throw ContractViolation("log_negativity: symplectic eigenvalue must be positive and finite");
  return std::max(0.0, -std::log(nu_min));
}

NegativityResult negativity(const FluctuationGaussianState& s) {
  const double nu = min_symplectic_pt(to_quadrature(reduce_to_a1b1(s)));
  return {nu, log_negativity(nu)};
}

}  // namespace mesoent
