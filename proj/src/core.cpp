#include "quench/core.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "quench/errors.hpp"

namespace quench {

namespace {

// (wf^2 - wi^2) / (2 wf^2), so that b^2 = 1 + 2 p sinh^2(wf beta).
double quench_p(const ModeQuench& m) {
  return (m.omega_f - m.omega_i) * (m.omega_f + m.omega_i) / (2.0 * m.omega_f * m.omega_f);
}

double log_sinh(double x) { return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void check_beta(const ModeQuench& mode, double beta) {
  if (!(beta >= kBetaFloor) || !std::isfinite(beta)) {
    throw DomainError("beta must be finite and at least " + fmt(kBetaFloor) + ", got " + fmt(beta));
  }
  if (auto bs = downward_beta_star(mode); bs && beta >= *bs * (1.0 - 1e-6)) {
    throw DomainError("downward quench: beta " + fmt(beta) + " is beyond the b^2 = 0 crossing at beta* = " +
                          fmt(*bs),
                      *bs);
  }
}

}  // namespace

void QuenchSpec::validate() const {
  for (double v : {k0_i, k0_f, J_i, J_f}) {
    if (!std::isfinite(v)) throw DomainError("quench parameters must be finite");
  }
  if (k0_i <= 0.0 || k0_f <= 0.0) throw DomainError("spring constants k0_i, k0_f must be positive");
  if (k0_i + 2.0 * J_i <= 0.0) throw DomainError("k0_i + 2 J_i must be positive (omega_2 at t=0 is not real)");
  if (k0_f + 2.0 * J_f <= 0.0) throw DomainError("k0_f + 2 J_f must be positive (omega_2 at t>0 is not real)");
}

void ModeQuench::validate() const {
  if (!(omega_i > 0.0) || !(omega_f > 0.0) || !std::isfinite(omega_i) || !std::isfinite(omega_f)) {
    throw DomainError("mode frequencies must be positive and finite");
  }
}

Temperature Temperature::from_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive and finite");
  return Temperature{1.0 / beta};
}

double Temperature::beta() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("temperature must be positive and finite");
  return 1.0 / T;
}

std::pair<ModeQuench, ModeQuench> normal_modes(const QuenchSpec& spec) {
  spec.validate();
  return {ModeQuench{std::sqrt(spec.k0_i), std::sqrt(spec.k0_f)},
          ModeQuench{std::sqrt(spec.k0_i + 2.0 * spec.J_i), std::sqrt(spec.k0_f + 2.0 * spec.J_f)}};
}

std::optional<double> downward_beta_star(const ModeQuench& mode) {
  mode.validate();
  if (mode.omega_f >= mode.omega_i) return std::nullopt;
  return std::atanh(mode.omega_f / mode.omega_i) / mode.omega_f;
}

double euclidean_b(const ModeQuench& mode, double beta) {
  mode.validate();
  const double x = mode.omega_f * beta;
  const double p = quench_p(mode);
  if (x <= kAsymptoticThreshold) {
    const double s = std::sinh(x);
    const double b2 = 1.0 + 2.0 * p * s * s;
    if (!(b2 > 0.0)) throw DomainError("b^2 <= 0 at beta " + fmt(beta), downward_beta_star(mode));
    return std::sqrt(b2);
  }
  const double e = std::exp(-2.0 * x);
  const double r = p * (1.0 + e * e) + 2.0 * (1.0 - p) * e;
  if (!(r > 0.0)) throw DomainError("b^2 <= 0 at beta " + fmt(beta), downward_beta_star(mode));
  return std::exp(x) * std::sqrt(0.5 * r);
}

double euclidean_gamma(const ModeQuench& mode, double beta) {
  mode.validate();
  const double wi = mode.omega_i, wf = mode.omega_f;
  const double e = std::exp(-2.0 * wf * beta);
  const double den = (wf - wi) + (wf + wi) * e;
  if (!(den > 0.0)) throw DomainError("Euclidean phase undefined at beta " + fmt(beta), downward_beta_star(mode));
  // num - den = 2 wi (1 - e), kept explicit so small beta keeps full relative precision.
  return 0.5 * std::log1p(-2.0 * wi * std::expm1(-2.0 * wf * beta) / den);
}

double realtime_b(const ModeQuench& mode, double t) {
  mode.validate();
  const double c = std::cos(mode.omega_f * t), s = std::sin(mode.omega_f * t);
  const double r = mode.omega_i / mode.omega_f;
  return std::sqrt(c * c + r * r * s * s);
}

double realtime_gamma(const ModeQuench& mode, double t) {
  mode.validate();
  const double theta = mode.omega_f * t;
  const double n = std::round(theta / std::numbers::pi);
  const double r = mode.omega_i / mode.omega_f;
  return n * std::numbers::pi + std::atan(r * std::tan(theta - n * std::numbers::pi));
}

ModeThermo mode_thermo(const ModeQuench& mode, double beta) {
  mode.validate();
  check_beta(mode, beta);

  ModeThermo mt;
  mt.omega_i = mode.omega_i;
  mt.omega_f = mode.omega_f;
  mt.beta = beta;

  const double wi = mode.omega_i, wf = mode.omega_f;
  const double x = wf * beta;
  const double p = quench_p(mode);
  double one_minus_inv_b = 0.0;
  if (x <= kAsymptoticThreshold) {
    const double s = std::sinh(x);
    const double b2m1 = 2.0 * p * s * s;
    mt.b = std::sqrt(1.0 + b2m1);
    mt.inv_b = 1.0 / mt.b;
    one_minus_inv_b = b2m1 / (mt.b * (mt.b + 1.0));
    mt.a_cap = (wf - wi) * (wf + wi) / (4.0 * wf) * std::sinh(2.0 * x) / (1.0 + b2m1);
  } else {
    const double e = std::exp(-2.0 * x);
    const double r = p * (1.0 + e * e) + 2.0 * (1.0 - p) * e;
    const double half = std::sqrt(0.5 * r);
    mt.b = std::exp(x) * half;
    mt.inv_b = std::exp(-x) / half;
    one_minus_inv_b = 1.0 - mt.inv_b;
    mt.a_cap = (wf - wi) * (wf + wi) / (4.0 * wf) * (1.0 - e * e) / r;
  }

  mt.gamma_E = euclidean_gamma(mode, beta);
  const double g = mt.gamma_E;
  mt.coth_gamma = 1.0 / std::tanh(g);
  mt.csch_gamma = g > 700.0 ? 0.0 : 1.0 / std::sinh(g);

  const double ib = mt.inv_b;
  mt.a_minus = mt.a_cap + 0.5 * wi *
                              (one_minus_inv_b * one_minus_inv_b * mt.csch_gamma +
                               (1.0 + ib * ib) * std::tanh(0.5 * g));
  const double gap = 2.0 * wi * mt.csch_gamma * ib;
  mt.a_plus = mt.a_minus + gap;
  if (!(mt.a_minus > 0.0)) throw NumericalError("non-positive Gaussian width a_- at beta " + fmt(beta));
  const double root_sum = std::sqrt(mt.a_plus) + std::sqrt(mt.a_minus);
  mt.xi = gap / (root_sum * root_sum);
  mt.eps = std::sqrt(mt.a_plus * mt.a_minus);
  return mt;
}

double purity_single(const ModeThermo& mt) { return std::sqrt(mt.a_minus / mt.a_plus); }

double partition_single(const ModeThermo& mt) {
  if (!(mt.gamma_E > 0.0)) throw DomainError("partition function undefined at sinh(Gamma_E) = 0");
  const double log_z = 0.5 * (std::log(mt.omega_i) + std::log(mt.inv_b) - log_sinh(mt.gamma_E) -
                              std::log(2.0 * mt.a_minus));
  return std::exp(log_z);
}

}  // namespace quench
