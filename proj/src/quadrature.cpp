#include "quench/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace quench {

namespace {

Eigen::VectorXd tridiagonal_roots(int n, auto offdiag) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) sub[k - 1] = offdiag(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Legendre P_n and P_{n-1} at t.
std::pair<double, double> legendre_pair(int n, double t) {
  double p0 = 1.0, p1 = t;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

}  // namespace

std::vector<double> hermite_functions(int n, double z) {
  std::vector<double> psi(static_cast<std::size_t>(n) + 1);
  psi[0] = std::exp(-0.5 * z * z) / std::sqrt(std::sqrt(std::numbers::pi));
  if (n >= 1) psi[1] = std::numbers::sqrt2 * z * psi[0];
  for (int k = 2; k <= n; ++k) {
    psi[k] = std::sqrt(2.0 / k) * z * psi[k - 1] - std::sqrt((k - 1.0) / k) * psi[k - 2];
  }
  return psi;
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  const Eigen::VectorXd roots = tridiagonal_roots(n, [](int k) { return k / std::sqrt(4.0 * k * k - 1.0); });
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = roots[i];
    double dp = 0.0;
    for (int it = 0; it < 3; ++it) {
      auto [p, pm] = legendre_pair(n, t);
      dp = n * (t * p - pm) / (t * t - 1.0);
      t -= p / dp;
    }
    auto [p, pm] = legendre_pair(n, t);
    dp = n * (t * p - pm) / (t * t - 1.0);
    rule.nodes[i] = t;
    rule.weights[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return rule;
}

QuadratureRule gauss_hermite_plain(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Hermite order must be positive");
  const Eigen::VectorXd roots = tridiagonal_roots(n, [](int k) { return std::sqrt(0.5 * k); });
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = roots[i];
    for (int it = 0; it < 3; ++it) {
      const auto psi = hermite_functions(n, t);
      t -= psi[n] / (std::sqrt(2.0 * n) * psi[n - 1]);
    }
    const auto psi = hermite_functions(n, t);
    rule.nodes[i] = t;
    // exp(-t^2) cancels between the classical weight and the Hermite functions.
    rule.weights[i] = 1.0 / (n * psi[n - 1] * psi[n - 1]);
  }
  return rule;
}

}  // namespace quench
