#pragma once

#include <Eigen/Dense>
#include <complex>
#include <json.hpp>
#include <span>

#include "quench/core.hpp"

namespace quench {

// norm * exp(-v^T Q v) with v = (out coordinates..., in coordinates...).
class QuadraticKernel {
 public:
  QuadraticKernel(int dim, double norm, Eigen::MatrixXd q);

  int dim() const { return dim_; }
  double norm() const { return norm_; }
  const Eigen::MatrixXd& q() const { return q_; }

  Eigen::MatrixXd q_out() const { return q_.topLeftCorner(dim_, dim_); }
  Eigen::MatrixXd q_in() const { return q_.bottomRightCorner(dim_, dim_); }
  Eigen::MatrixXd q_cross() const { return q_.topRightCorner(dim_, dim_); }

  double operator()(std::span<const double> out, std::span<const double> in) const;

  nlohmann::json to_json() const;
  static QuadraticKernel from_json(const nlohmann::json& j);

 private:
  int dim_;
  double norm_;
  Eigen::MatrixXd q_;
};

double eval_kernel(const QuadraticKernel& k, std::span<const double> out, std::span<const double> in);

// Exponent coefficients of the coupled thermal kernel in the named form
// -a1(x1'^2+x2'^2) - a2(x1^2+x2^2) + 2a3 x1'x2' + 2a4 x1x2 + 2a5(x1x1'+x2x2') + 2a6(x1x2'+x2x1').
struct Alphas {
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0;
};

Alphas alphas_from_modes(const ModeThermo& m1, const ModeThermo& m2);
// Accessor view over a dim=2 kernel; valid for thermal kernels and their partial transposes.
Alphas alphas(const QuadraticKernel& k);
QuadraticKernel kernel_from_alphas(const Alphas& a, double norm);

QuadraticKernel thermal_rho_single(const ModeThermo& mt);
QuadraticKernel thermal_rho_coupled(const ModeThermo& m1, const ModeThermo& m2);

// Trace over particle 2 via a Schur complement on Q.
QuadraticKernel reduce_substate(const QuadraticKernel& rho);
// Trace over particle 1.
QuadraticKernel reduce_substate_b(const QuadraticKernel& rho);

// Reduced-state coefficients in the printed form B2 x'^2 + B1 x^2 - 2 B3 x x'.
struct SubstateCoefficients {
  double B1 = 0, B2 = 0, B3 = 0, norm = 0;
};
SubstateCoefficients substate_coefficients(const Alphas& a, double a1_minus, double a2_minus);

// Transpose on particle 1 (x1 <-> x1').
QuadraticKernel partial_transpose(const QuadraticKernel& rho);
// Exchange of out and in coordinates.
QuadraticKernel swap_in_out(const QuadraticKernel& k);
// Exchange of particle labels.
QuadraticKernel swap_particles(const QuadraticKernel& k);

struct RealTimeKernelParams {
  double omega_i = 1.0;
  double omega_f = 1.0;
  double t = 0.0;
  double b = 1.0;
  double gamma = 0.0;
  // kappa in the exp(-i kappa x'^2) prefactor, kappa = (wf^2 - wi^2) sin(2 wf t) / (4 wf b^2).
  double phase_coeff = 0.0;

  static RealTimeKernelParams make(const ModeQuench& mode, double t);
};

std::complex<double> realtime_kernel_single(const RealTimeKernelParams& p, double x_out, double x_in);

// The same propagator continued to t = -i beta, evaluated with complex arithmetic.
std::complex<double> euclidean_continuation(const ModeQuench& mode, double beta, double x_out, double x_in);

}  // namespace quench
