#pragma once

#include <vector>

namespace quench {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

// Gauss-Hermite rule for weight exp(-t^2). The returned weights already include
// exp(t^2), so that sum w_k f(t_k) approximates the plain integral of f.
QuadratureRule gauss_hermite_plain(int n);

// Normalized Hermite functions psi_0..psi_n at z (each bounded by ~1, no overflow).
std::vector<double> hermite_functions(int n, double z);

}  // namespace quench
