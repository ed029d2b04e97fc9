#include "mesoent/mesoscopic.hpp"

#include <cmath>
#include <sstream>

#include "mesoent/errors.hpp"

namespace mesoent {

namespace {

constexpr cd kI{0.0, 1.0};

Matrix8cd block_swap() {
  Matrix8cd lambda = Matrix8cd::Zero();
  lambda.topRightCorner<4, 4>().setIdentity();
  lambda.bottomLeftCorner<4, 4>().setIdentity();
  return lambda;
}

Matrix8cd doubled_flow(const MesoGenerator& g, double t) {
  const Eigen::Matrix4cd e = g.flow(t);
  Matrix8cd out = Matrix8cd::Zero();
  out.topLeftCorner<4, 4>() = e;
  out.bottomRightCorner<4, 4>() = e.conjugate();
  return out;
}

}  // namespace

ModeMap build_mode_map(const ModelParams& p) {
  return build_mode_map(p.eta(), p.eta_complement(), p.one_minus_eta());
}

ModeMap build_mode_map(double eta) { return build_mode_map(eta, std::sqrt((1.0 - eta) * (1.0 + eta)), 1.0 - eta); }

ModeMap build_mode_map(double eta, double eta_complement, double one_minus_eta) {
  if (!(eta > 0.0) || !(eta < 1.0) || !(eta_complement > 0.0)) {
    std::ostringstream os;
    os << "build_mode_map: eta = " << eta << " outside (0, 1)";
    throw DomainError(os.str());
  }
  const double first = 1.0 / (2.0 * std::sqrt(eta));
  const double second = std::sqrt(eta) / (2.0 * eta_complement);

  Matrix8cd c = Matrix8cd::Zero();
  for (int chain = 0; chain < 2; ++chain) {
    const int row1 = 2 * chain;      // a1 or b1
    const int row2 = 2 * chain + 1;  // a2 or b2
    const int col = 4 * chain;
    c(row1, col) = first;
    c(row1, col + 1) = -kI * first;
    c(row2, col) = second;
    c(row2, col + 1) = -kI * second;
    c(row2, col + 2) = second / eta;
    c(row2, col + 3) = -kI * second / eta;
  }
  c.bottomRows<4>() = c.topRows<4>().conjugate();

  ModeMap map{c, Matrix8cd::Zero(), eta, eta_complement, one_minus_eta};
  Eigen::FullPivLU<Matrix8cd> lu(c);
  if (!lu.isInvertible()) throw NumericError("build_mode_map: mode map is singular");
  map.inverse = lu.inverse();
  return map;
}

SiteOperator ModeMap::site_operator(int i) const {
  if (i < 0 || i > 7) throw ContractViolation("ModeMap::site_operator: index out of range");
  if (i >= 4) return site_operator(i - 4).adjoint();

  Eigen::Matrix2cd lower;
  lower << 0, 0, 1, 0;
  Eigen::Matrix2cd weight = Eigen::Matrix2cd::Identity() / std::sqrt(eta);
  if (i % 2 == 1) {
    const double scale = std::sqrt(eta) / eta_complement;
    weight = Eigen::Matrix2cd::Zero();
    weight(0, 0) = scale * (1.0 + eta) / eta;
    weight(1, 1) = -scale * one_minus_eta / eta;
  }
  Matrix4cd m;
  const Eigen::Matrix2cd& first = i < 2 ? lower : weight;
  const Eigen::Matrix2cd& second = i < 2 ? weight : lower;
  for (int r = 0; r < 2; ++r)
    for (int q = 0; q < 2; ++q) m.block<2, 2>(2 * r, 2 * q) = first(r, q) * second;
  return SiteOperator(m);
}

ModeCommutators mode_commutators(const ModeMap& map, const ThermalSiteState& st) {
  std::array<SiteOperator, 4> c;
  for (int i = 0; i < 4; ++i) c[i] = map.site_operator(i);
  ModeCommutators out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      out.mixed(i, j) = fluctuation_inner(c[i].adjoint(), c[j].adjoint(), st) - fluctuation_inner(c[j], c[i], st);
      out.plain(i, j) = fluctuation_inner(c[i].adjoint(), c[j], st) - fluctuation_inner(c[j].adjoint(), c[i], st);
    }
  return out;
}

Eigen::Matrix4d coupling_matrix(double eta, double eta_complement) {
  const double c = eta_complement;
  Eigen::Matrix4d k;
  k << 0, 0, -eta, c,  //
      0, 0, c, eta,    //
      -eta, c, 0, 0,   //
      c, eta, 0, 0;
  return k;
}

MesoGenerator build_meso_generator(const ModelParams& p) {
  MesoGenerator g;
  g.eta = p.eta();
  g.epsilon = p.epsilon();
  g.gamma = p.gamma();
  g.m = -(1.0 + kI * p.epsilon()) * Eigen::Matrix4cd::Identity() + p.gamma() * coupling_matrix(p.eta(), p.eta_complement()).cast<cd>();
  return g;
}

Eigen::Matrix4cd MesoGenerator::flow(double t) const { return numerics::expm(m, t); }

WeylVector MesoGenerator::evolve(const WeylVector& z, double t) const { return flow(t) * z; }

double MesoGenerator::phi(const WeylVector& z, double t) const {
  return (evolve(z, t).squaredNorm() - z.squaredNorm()) / (2.0 * eta);
}

FluctuationGaussianState::FluctuationGaussianState(Matrix8cd gamma, double eta) : gamma_(std::move(gamma)), eta_(eta) {
  if (!(eta > 0.0) || !(eta < 1.0)) throw DomainError("FluctuationGaussianState: eta outside (0, 1)");
  if (!numerics::all_finite(gamma_)) throw DomainError("FluctuationGaussianState: non-finite entries");
  if (!numerics::is_hermitian(gamma_, 1e-10)) throw ContractViolation("FluctuationGaussianState: Gamma is not Hermitian");
}

FluctuationGaussianState FluctuationGaussianState::thermal(double eta) {
  return FluctuationGaussianState(Matrix8cd::Identity() / (2.0 * eta), eta);
}

FluctuationGaussianState FluctuationGaussianState::from_moments(const Eigen::Matrix4cd& symmetrized,
                                                                const Eigen::Matrix4cd& anomalous, double eta) {
  Matrix8cd g;
  g.topLeftCorner<4, 4>() = symmetrized.conjugate();
  g.topRightCorner<4, 4>() = -anomalous.conjugate();
  g.bottomLeftCorner<4, 4>() = -anomalous;
  g.bottomRightCorner<4, 4>() = symmetrized;
  return FluctuationGaussianState(g, eta);
}

Eigen::Matrix4cd FluctuationGaussianState::symmetrized_moments() const { return gamma_.bottomRightCorner<4, 4>(); }

Eigen::Matrix4cd FluctuationGaussianState::anomalous_moments() const { return -gamma_.bottomLeftCorner<4, 4>(); }

cd FluctuationGaussianState::characteristic(const WeylVector& z) const {
  Vector8cd v;
  v.head<4>() = z;
  v.tail<4>() = z.conjugate();
  return std::exp(-0.5 * (v.adjoint() * gamma_ * v)(0, 0));
}

double FluctuationGaussianState::swap_asymmetry() const {
  const Matrix8cd lambda = block_swap();
  return (gamma_ - lambda * gamma_.conjugate() * lambda).cwiseAbs().maxCoeff();
}

FluctuationGaussianState initial_state(const ModelParams& p, double squeeze_r) {
  if (!std::isfinite(squeeze_r)) throw DomainError("initial_state: squeeze parameter must be finite");
  const double eta = p.eta();
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Identity() / (2.0 * eta);
  Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
  for (Mode m : {Mode::a1, Mode::b1}) {
    const int k = index_of(m);
    s(k, k) = std::cosh(2.0 * squeeze_r) / (2.0 * eta);
    a(k, k) = -std::sinh(2.0 * squeeze_r) / (2.0 * eta);
  }
  return FluctuationGaussianState::from_moments(s, a, eta);
}

Matrix8cd deviation_from_thermal(const FluctuationGaussianState& s, const MesoGenerator& g, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("propagate: time must be finite and >= 0");
  if (std::abs(s.eta() - g.eta) > tol::kStructural)
    throw ContractViolation("propagate: state and generator were built for different temperatures");
  const Matrix8cd thermal = Matrix8cd::Identity() / (2.0 * g.eta);
  const Matrix8cd flow = doubled_flow(g, t);
  return flow.adjoint() * (s.gamma() - thermal) * flow;
}

FluctuationGaussianState propagate(const FluctuationGaussianState& s, const MesoGenerator& g, double t) {
  Matrix8cd gamma = deviation_from_thermal(s, g, t);
  gamma.diagonal().array() += 1.0 / (2.0 * g.eta);
  // Restore exact Hermiticity lost to rounding in the triple product.
  gamma = (0.5 * (gamma + gamma.adjoint())).eval();
  return FluctuationGaussianState(gamma, g.eta);
}

}  // namespace mesoent
