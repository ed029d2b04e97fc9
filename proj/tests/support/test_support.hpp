#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "mesoent/numerics.hpp"

namespace mesoent::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20261016);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline ComplexMatrix random_complex(int n, double scale = 1.0) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cd(uniform(-scale, scale), uniform(-scale, scale));
  return a;
}

inline ComplexMatrix random_hermitian(int n, double scale = 1.0) {
  const ComplexMatrix a = random_complex(n, scale);
  return 0.5 * (a + a.adjoint());
}

/// Random single-mode or two-mode symplectic map on (x1, p1, ..., xn, pn):
/// product of local rotations, local squeezers and nearest-neighbour beam splitters.
inline Eigen::MatrixXd random_symplectic(int modes, bool local_only = false) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  for (int layer = 0; layer < 3; ++layer) {
    for (int k = 0; k < modes; ++k) {
      Eigen::MatrixXd local = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
      const double th = uniform(0.0, 2.0 * M_PI);
      const double r = uniform(-0.6, 0.6);
      Eigen::Matrix2d rot;
      rot << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
      Eigen::Matrix2d sq = Eigen::Vector2d(std::exp(-r), std::exp(r)).asDiagonal();
      local.block<2, 2>(2 * k, 2 * k) = sq * rot;
      s = local * s;
    }
    if (local_only) continue;
    for (int k = 0; k + 1 < modes; ++k) {
      const double th = uniform(0.0, 2.0 * M_PI);
      Eigen::MatrixXd bs = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
      const double c = std::cos(th), sn = std::sin(th);
      for (int q = 0; q < 2; ++q) {
        bs(2 * k + q, 2 * k + q) = c;
        bs(2 * k + q, 2 * (k + 1) + q) = sn;
        bs(2 * (k + 1) + q, 2 * k + q) = -sn;
        bs(2 * (k + 1) + q, 2 * (k + 1) + q) = c;
      }
      s = bs * s;
    }
  }
  return s;
}

/// Truncated Fock space of two bosonic modes, used as an independent oracle
/// for characteristic functions of Gaussian states.
class TwoModeFock {
 public:
  explicit TwoModeFock(int cutoff) : n_(cutoff) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_, n_);
    for (int k = 1; k < n_; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n_, n_);
    a1_ = numerics::kron(a, id);
    a2_ = numerics::kron(id, a);
  }

  const Eigen::MatrixXcd& a1() const { return a1_; }
  const Eigen::MatrixXcd& a2() const { return a2_; }
  int dim() const { return n_ * n_; }

  /// Product thermal state with mean occupation nbar in each mode.
  Eigen::MatrixXcd thermal(double nbar) const {
    Eigen::VectorXcd w(n_);
    for (int k = 0; k < n_; ++k) w(k) = std::pow(nbar / (1.0 + nbar), k);
    w /= w.sum();
    const Eigen::MatrixXcd r = w.asDiagonal();
    return numerics::kron(r, r);
  }

  static Eigen::MatrixXcd expm(const Eigen::MatrixXcd& x) { return x.exp(); }

  static cd expect(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op) { return (rho * op).trace(); }

 private:
  int n_;
  Eigen::MatrixXcd a1_;
  Eigen::MatrixXcd a2_;
};

}  // namespace mesoent::testing
