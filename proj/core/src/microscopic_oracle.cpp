#include "mesoent/microscopic_oracle.hpp"

#include <cmath>
#include <sstream>

#include "mesoent/errors.hpp"

namespace mesoent {

namespace {

constexpr cd kI{0.0, 1.0};

// Superoperator of X -> A X B.
Matrix16cd sandwich(const Matrix4cd& a, const Matrix4cd& b) {
  return numerics::kron(b.transpose(), a);
}

cd int_power(cd base, std::uint64_t n) {
  cd result{1.0, 0.0};
  while (n > 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

void require_hermitian(const SiteOperator& x, const char* who) {
  if (!x.is_hermitian()) throw DomainError(std::string(who) + ": observable must be Hermitian");
}

SiteOperator centered_exponential(const SiteOperator& x, std::uint64_t n, const ThermalSiteState& st) {
  const double mean = st.expectation(x).real();
  const Matrix4cd centered = x.matrix - mean * Matrix4cd::Identity();
  return SiteOperator(numerics::expm(kI * centered, 1.0 / std::sqrt(static_cast<double>(n))));
}

}  // namespace

Vector16cd vectorize(const SiteOperator& x) {
  return Eigen::Map<const Vector16cd>(x.matrix.data());
}

SiteOperator unvectorize(const Vector16cd& v) { return SiteOperator(Eigen::Map<const Matrix4cd>(v.data())); }

SiteOperator Superoperator::apply(const SiteOperator& x) const { return unvectorize(matrix * vectorize(x)); }

Superoperator build_liouvillian(const ModelParams& p, double dissipator_scale) {
  const Matrix4cd h = build_site_hamiltonian(p).matrix;
  const auto v = build_lindblad_ops(p);
  const auto d = build_dissipation_matrix(p.gamma());
  const Matrix4cd id = Matrix4cd::Identity();

  Matrix16cd l = kI * (sandwich(h, id) - sandwich(id, h));
  // [[V, X], W] = V X W - X V W - W V X + W X V
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const double coeff = d.coefficients(mu, nu);
      if (coeff == 0.0) continue;
      const Matrix4cd& vm = v[mu].matrix;
      const Matrix4cd w = v[nu].matrix.adjoint();
      l += dissipator_scale * coeff *
           (sandwich(vm, w) - sandwich(id, vm * w) - sandwich(w * vm, id) + sandwich(w, vm));
    }
  }
  return Superoperator{l};
}

SiteOperator apply_liouvillian_direct(const ModelParams& p, const SiteOperator& x, double dissipator_scale) {
  const SiteOperator h = build_site_hamiltonian(p);
  const auto v = build_lindblad_ops(p);
  const auto d = build_dissipation_matrix(p.gamma());
  SiteOperator out = kI * commutator(h, x);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      out = out + (dissipator_scale * d.coefficients(mu, nu)) * commutator(commutator(v[mu], x), v[nu].adjoint());
  return out;
}

double stationarity_residual(const Superoperator& l, const ThermalSiteState& st) {
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      worst = std::max(worst, std::abs(st.expectation(l.apply(pauli_product(mu, nu)))));
  return worst;
}

double GeneratorExtraction::sector_mixing() const {
  return std::max(mode_generator.topRightCorner<4, 4>().cwiseAbs().maxCoeff(),
                  mode_generator.bottomLeftCorner<4, 4>().cwiseAbs().maxCoeff());
}

GeneratorExtraction extract_mode_generator(const Superoperator& l, const ModelParams& p) {
  const auto& xs = fluctuation_observables();
  const Matrix4cd id = Matrix4cd::Identity();
  GeneratorExtraction out;
  for (int a = 0; a < 8; ++a) {
    const Matrix4cd image = l.apply(xs[a]).matrix;
    Matrix4cd remainder = image;
    for (int b = 0; b < 8; ++b) {
      const cd c = (xs[b].matrix.adjoint() * image).trace() / 4.0;
      out.observable_generator(a, b) = c;
      remainder -= c * xs[b].matrix;
    }
    const cd c0 = image.trace() / 4.0;
    out.identity_coeffs[static_cast<std::size_t>(a)] = c0;
    remainder -= c0 * id;
    out.residual = std::max(out.residual, std::sqrt((remainder.adjoint() * remainder).trace().real() / 4.0));
  }

  double worst_identity = 0.0;
  for (const cd c : out.identity_coeffs) worst_identity = std::max(worst_identity, std::abs(c));
  if (out.residual > tol::kClosure || worst_identity > tol::kClosure) {
    std::ostringstream os;
    os << "extract_mode_generator: generator leaves span{x_alpha, 1} (residual " << out.residual
       << ", identity coefficient " << worst_identity << ", tolerance " << tol::kClosure << ")";
    throw ClosureViolation(os.str());
  }

  const ModeMap map = build_mode_map(p);
  out.mode_generator = map.coefficients * out.observable_generator * map.inverse;
  return out;
}

cd weyl_expectation_finite_N(const SiteOperator& x, std::uint64_t n, const ThermalSiteState& st) {
  require_hermitian(x, "weyl_expectation_finite_N");
  if (n == 0) throw DomainError("weyl_expectation_finite_N: N must be >= 1");
  return int_power(st.expectation(centered_exponential(x, n, st)), n);
}

cd weyl_product_finite_N(const SiteOperator& x, const SiteOperator& y, std::uint64_t n, const ThermalSiteState& st) {
  require_hermitian(x, "weyl_product_finite_N");
  require_hermitian(y, "weyl_product_finite_N");
  if (n == 0) throw DomainError("weyl_product_finite_N: N must be >= 1");
  const SiteOperator site = centered_exponential(x, n, st) * centered_exponential(y, n, st);
  return int_power(st.expectation(site), n);
}

cd weyl_expectation_limit(const SiteOperator& x, const ThermalSiteState& st) {
  require_hermitian(x, "weyl_expectation_limit");
  return std::exp(-0.5 * fluctuation_inner(x, x, st));
}

cd weyl_product_limit(const SiteOperator& x, const SiteOperator& y, const ThermalSiteState& st) {
  require_hermitian(x, "weyl_product_limit");
  require_hermitian(y, "weyl_product_limit");
  const SiteOperator sum = x + y;
  return std::exp(-0.5 * (fluctuation_inner(sum, sum, st) + fluctuation_commutator(x, y, st)));
}

}  // namespace mesoent
