#include "quench/kernel.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <numbers>
#include <vector>

#include "quench/errors.hpp"

namespace quench {

namespace {

QuadraticKernel permuted(const QuadraticKernel& k, const std::vector<int>& perm) {
  const Eigen::Index n = k.q().rows();
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) q(i, j) = k.q()(perm[i], perm[j]);
  return QuadraticKernel(k.dim(), k.norm(), std::move(q));
}

void require_dim2(const QuadraticKernel& k, const char* what) {
  if (k.dim() != 2) throw DomainError(std::string(what) + " needs a two-particle kernel");
}

}  // namespace

QuadraticKernel::QuadraticKernel(int dim, double norm, Eigen::MatrixXd q) : dim_(dim), norm_(norm), q_(std::move(q)) {
  if (dim != 1 && dim != 2) throw DomainError("kernel dimension must be 1 or 2");
  if (q_.rows() != 2 * dim || q_.cols() != 2 * dim) throw DomainError("kernel matrix must be (2 dim) x (2 dim)");
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("kernel prefactor must be positive and finite");
  const double scale = std::max(1.0, q_.cwiseAbs().maxCoeff());
  if ((q_ - q_.transpose()).cwiseAbs().maxCoeff() > 1e-14 * scale) throw DomainError("kernel matrix must be symmetric");
  q_ = 0.5 * (q_ + q_.transpose());
}

double QuadraticKernel::operator()(std::span<const double> out, std::span<const double> in) const {
  if (static_cast<int>(out.size()) != dim_ || static_cast<int>(in.size()) != dim_) {
    throw DomainError("coordinate count does not match kernel dimension");
  }
  Eigen::VectorXd v(2 * dim_);
  for (int i = 0; i < dim_; ++i) {
    v[i] = out[i];
    v[dim_ + i] = in[i];
  }
  return norm_ * std::exp(-v.dot(q_ * v));
}

double eval_kernel(const QuadraticKernel& k, std::span<const double> out, std::span<const double> in) {
  return k(out, in);
}

nlohmann::json QuadraticKernel::to_json() const {
  std::vector<double> flat;
  for (Eigen::Index i = 0; i < q_.rows(); ++i)
    for (Eigen::Index j = 0; j < q_.cols(); ++j) flat.push_back(q_(i, j));
  return {{"dim", dim_}, {"norm", norm_}, {"Q", flat}};
}

QuadraticKernel QuadraticKernel::from_json(const nlohmann::json& j) {
  const int dim = j.at("dim").get<int>();
  const auto flat = j.at("Q").get<std::vector<double>>();
  const int n = 2 * dim;
  if (static_cast<int>(flat.size()) != n * n) throw DomainError("kernel JSON has the wrong number of Q entries");
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) q(i, c) = flat[static_cast<std::size_t>(i * n + c)];
  return QuadraticKernel(dim, j.at("norm").get<double>(), std::move(q));
}

Alphas alphas_from_modes(const ModeThermo& m1, const ModeThermo& m2) {
  if (m1.beta != m2.beta) throw DomainError("modes must share the same beta");
  auto t_out = [](const ModeThermo& m) {
    return 0.5 * m.a_cap + 0.25 * m.omega_i * m.coth_gamma * m.inv_b * m.inv_b;
  };
  auto t_in = [](const ModeThermo& m) { return 0.25 * m.omega_i * m.coth_gamma; };
  auto t_cross = [](const ModeThermo& m) { return 0.25 * m.omega_i * m.csch_gamma * m.inv_b; };
  Alphas a;
  a.a1 = t_out(m1) + t_out(m2);
  a.a2 = t_in(m1) + t_in(m2);
  a.a3 = -t_out(m1) + t_out(m2);
  a.a4 = -t_in(m1) + t_in(m2);
  a.a5 = t_cross(m1) + t_cross(m2);
  a.a6 = t_cross(m1) - t_cross(m2);
  return a;
}

QuadraticKernel kernel_from_alphas(const Alphas& a, double norm) {
  Eigen::Matrix4d q;
  q << a.a1, -a.a3, -a.a5, -a.a6,  //
      -a.a3, a.a1, -a.a6, -a.a5,   //
      -a.a5, -a.a6, a.a2, -a.a4,   //
      -a.a6, -a.a5, -a.a4, a.a2;
  return QuadraticKernel(2, norm, q);
}

Alphas alphas(const QuadraticKernel& k) {
  require_dim2(k, "alpha view");
  const auto& q = k.q();
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  const double tol = 1e-12 * scale;
  if (std::abs(q(0, 0) - q(1, 1)) > tol || std::abs(q(2, 2) - q(3, 3)) > tol || std::abs(q(0, 2) - q(1, 3)) > tol ||
      std::abs(q(0, 3) - q(1, 2)) > tol) {
    throw DomainError("kernel does not have the particle-exchange symmetric thermal structure");
  }
  return Alphas{q(0, 0), q(2, 2), -q(0, 1), -q(2, 3), -q(0, 2), -q(0, 3)};
}

QuadraticKernel thermal_rho_single(const ModeThermo& mt) {
  const double c_cosh = 0.5 * mt.omega_i * mt.coth_gamma;
  const double c = 0.5 * mt.omega_i * mt.csch_gamma;
  Eigen::Matrix2d q;
  q << mt.a_cap + c_cosh * mt.inv_b * mt.inv_b, -c * mt.inv_b,  //
      -c * mt.inv_b, c_cosh;
  return QuadraticKernel(1, std::sqrt(mt.a_minus / std::numbers::pi), q);
}

QuadraticKernel thermal_rho_coupled(const ModeThermo& m1, const ModeThermo& m2) {
  return kernel_from_alphas(alphas_from_modes(m1, m2), std::sqrt(m1.a_minus * m2.a_minus) / std::numbers::pi);
}

QuadraticKernel reduce_substate(const QuadraticKernel& rho) {
  require_dim2(rho, "partial trace");
  const auto& q = rho.q();
  // Particle 2 sits at indices 1 (out) and 3 (in); both are set to the integration variable.
  const double qtt = q(1, 1) + q(3, 3) + 2.0 * q(1, 3);
  if (!(qtt > 0.0)) throw DomainError("partial trace diverges (non-positive marginal exponent)");
  Eigen::Vector2d g(q(0, 1) + q(0, 3), q(2, 1) + q(2, 3));
  Eigen::Matrix2d qa;
  qa << q(0, 0), q(0, 2), q(2, 0), q(2, 2);
  qa -= g * g.transpose() / qtt;
  return QuadraticKernel(1, rho.norm() * std::sqrt(std::numbers::pi / qtt), qa);
}

QuadraticKernel reduce_substate_b(const QuadraticKernel& rho) { return reduce_substate(swap_particles(rho)); }

SubstateCoefficients substate_coefficients(const Alphas& a, double a1_minus, double a2_minus) {
  const double d = a.a1 + a.a2 - 2.0 * a.a5;
  if (!(d > 0.0)) throw DomainError("partial trace diverges (alpha1 + alpha2 - 2 alpha5 <= 0)");
  SubstateCoefficients s;
  s.B1 = (a.a2 * d - (a.a4 + a.a6) * (a.a4 + a.a6)) / d;
  s.B2 = (a.a1 * d - (a.a3 + a.a6) * (a.a3 + a.a6)) / d;
  s.B3 = (a.a5 * d + (a.a3 + a.a6) * (a.a4 + a.a6)) / d;
  s.norm = std::sqrt(a1_minus * a2_minus / (std::numbers::pi * d));
  return s;
}

QuadraticKernel partial_transpose(const QuadraticKernel& rho) {
  require_dim2(rho, "partial transpose");
  return permuted(rho, {2, 1, 0, 3});
}

QuadraticKernel swap_in_out(const QuadraticKernel& k) {
  return k.dim() == 1 ? permuted(k, {1, 0}) : permuted(k, {2, 3, 0, 1});
}

QuadraticKernel swap_particles(const QuadraticKernel& k) {
  require_dim2(k, "particle exchange");
  return permuted(k, {1, 0, 3, 2});
}

RealTimeKernelParams RealTimeKernelParams::make(const ModeQuench& mode, double t) {
  mode.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("real-time kernel needs t > 0");
  RealTimeKernelParams p;
  p.omega_i = mode.omega_i;
  p.omega_f = mode.omega_f;
  p.t = t;
  p.b = realtime_b(mode, t);
  p.gamma = realtime_gamma(mode, t);
  const double wf = mode.omega_f, wi = mode.omega_i;
  p.phase_coeff = (wf - wi) * (wf + wi) * std::sin(2.0 * wf * t) / (4.0 * wf * p.b * p.b);
  return p;
}

std::complex<double> realtime_kernel_single(const RealTimeKernelParams& p, double x_out, double x_in) {
  using namespace std::complex_literals;
  const double s = std::sin(p.gamma);
  if (std::abs(s) < 1e-12) {
    const double tc = std::round(p.omega_f * p.t / std::numbers::pi) * std::numbers::pi / p.omega_f;
    char buf[96];
    std::snprintf(buf, sizeof buf, "real-time kernel evaluated at a caustic (nearest t = %.12g)", tc);
    throw CausticError(buf, tc);
  }
  const std::complex<double> pref = std::sqrt(p.omega_i / (2.0 * std::numbers::pi * 1i * p.b * s));
  const double inner = (x_in * x_in + x_out * x_out / (p.b * p.b)) * std::cos(p.gamma) - 2.0 * x_in * x_out / p.b;
  const double phase = -p.phase_coeff * x_out * x_out + p.omega_i / (2.0 * s) * inner;
  return pref * std::exp(1i * phase);
}

std::complex<double> euclidean_continuation(const ModeQuench& mode, double beta, double x_out, double x_in) {
  using namespace std::complex_literals;
  mode.validate();
  const std::complex<double> t = -1i * beta;
  const double wi = mode.omega_i, wf = mode.omega_f, r = wi / wf;
  const std::complex<double> c = std::cos(wf * t), s = std::sin(wf * t);
  const std::complex<double> b2 = c * c + r * r * s * s;
  const std::complex<double> b = std::sqrt(b2);
  const std::complex<double> gamma = std::atan(r * std::tan(wf * t));
  const std::complex<double> sg = std::sin(gamma);
  const std::complex<double> kappa = (wf * wf - wi * wi) * std::sin(2.0 * wf * t) / (4.0 * wf * b2);
  const std::complex<double> pref = std::sqrt(wi / (2.0 * std::numbers::pi * 1i * b * sg));
  const std::complex<double> inner = (x_in * x_in + x_out * x_out / b2) * std::cos(gamma) - 2.0 * x_in * x_out / b;
  return pref * std::exp(-1i * kappa * x_out * x_out + 1i * wi / (2.0 * sg) * inner);
}

}  // namespace quench
