#pragma once

#include <vector>

#include "quench/core.hpp"
#include "quench/kernel.hpp"

namespace quench {

// Partial-transpose spectrum at constant frequencies: Lambda_mn = (1-z1)(1-z2) z1^m z2^n.
struct ConstFreqPT {
  double mu_plus = 0, mu_minus = 0, nu_plus = 0, nu_minus = 0;
  double eps1 = 0, eps2 = 0;
  double zeta1 = 0, zeta2 = 0;

  double eigenvalue(int m, int n) const;
};

ConstFreqPT pt_spectrum_const(double omega1, double omega2, double beta);

struct NegativityResult {
  double value = 0.0;
  // Set when |zeta| reaches 1 and the value diverges.
  bool saturated = false;
};

NegativityResult negativity(double zeta1, double zeta2);
// Equivalent form in terms of u = z1 + z2 and v = z1 z2.
NegativityResult negativity_uv(double u, double v, double zeta1, double zeta2);

struct PTMoments {
  double beta1 = 0, beta2 = 0;
  double X1 = 0, X2 = 0;
  double u = 0, v = 0;
  double zeta1 = 0, zeta2 = 0;
  bool clamped = false;
};

// Moment method on a partially transposed two-particle thermal kernel.
PTMoments pt_moments(const QuadraticKernel& sigma);
PTMoments pt_moments(const Alphas& rho_alphas);

bool check_separable(double omega1, double omega2, double beta);

// Ratio y/x on the upper separability boundary y tanh y = x coth x.
double boundary_g(double z, double tol = 1e-12);

// Samples of g on log-spaced nodes with cubic Hermite interpolation in between.
// Falls back to direct solves when the midpoint error exceeds kInterpolationTol.
class BoundaryTable {
 public:
  static constexpr double kInterpolationTol = 1e-8;
  BoundaryTable(double z_min, double z_max, int nodes = 64);
  double operator()(double z) const;
  double z_min() const { return zs_.front(); }
  double z_max() const { return zs_.back(); }
  // Largest deviation from direct solves observed at interval midpoints.
  double error_estimate() const { return err_; }
  bool uses_direct_solve() const { return direct_; }

 private:
  std::vector<double> zs_, gs_, slopes_;
  double err_ = 0.0;
  bool direct_ = false;
};

// Solves g(x) = r for x > 0, r > 1.
double boundary_g_inverse(double r, double tol = 1e-14);

enum class TcMethod { exact, approx };

struct CriticalTemp {
  double tc_exact = 0.0;
  double tc_approx = 0.0;
  double x_c = 0.0;
  double y_c = 0.0;
};

CriticalTemp critical_temperature(double omega1, double omega2);
double critical_temperature(double omega1, double omega2, TcMethod method);

struct NegativityPoint {
  double zeta1 = 0, zeta2 = 0;
  NegativityResult n;
  bool clamped = false;
};

// Closed form at constant frequency, moment method otherwise.
NegativityPoint negativity_at(const QuenchSpec& spec, double beta);

// Temperature where the negativity vanishes, located by bisection on min(zeta1, zeta2).
// Returns 0 when no entangled temperature exists in the admissible range.
double vanishing_temperature(const QuenchSpec& spec, double tol_T = 1e-6);

struct ZeroTemperatureLimit {
  double value = 0.0;
  double beta = 0.0;
  bool converged = false;
};

// Large-beta limit of the negativity, doubling beta from beta_start until |dN/N| < rel_tol.
ZeroTemperatureLimit negativity_zero_temperature(const QuenchSpec& spec, double beta_start, double rel_tol = 1e-4);

}  // namespace quench
