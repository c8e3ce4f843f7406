#include "quench/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "quench/errors.hpp"

namespace quench {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double ratio_from_sums(double plus, double minus) {
  const double a = std::sqrt(plus), c = std::sqrt(minus);
  return (a - c) / (a + c);
}

template <class F>
double bisect(F f, double lo, double hi, double tol, const char* what) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw BracketError(std::string(what) + ": no sign change on [" + fmt(lo) + ", " + fmt(hi) + "]", lo, hi);
  }
  for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double ConstFreqPT::eigenvalue(int m, int n) const {
  return (1.0 - zeta1) * (1.0 - zeta2) * std::pow(zeta1, m) * std::pow(zeta2, n);
}

ConstFreqPT pt_spectrum_const(double omega1, double omega2, double beta) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0)) throw DomainError("frequencies must be positive");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  const double x = 0.5 * omega1 * beta, y = 0.5 * omega2 * beta;
  const double t1 = omega1 * std::tanh(x), c1 = omega1 / std::tanh(x);
  const double t2 = omega2 * std::tanh(y), c2 = omega2 / std::tanh(y);
  ConstFreqPT pt;
  pt.mu_plus = 0.25 * (c1 + t2);
  pt.mu_minus = 0.25 * (t1 + c2);
  pt.nu_plus = 0.25 * (c1 - t2);
  pt.nu_minus = -0.25 * (t1 - c2);
  pt.eps1 = std::sqrt(t1 * c2);
  pt.eps2 = std::sqrt(c1 * t2);
  // mu -/+ nu collapse to single tanh or coth terms, which avoids cancellation.
  pt.zeta1 = ratio_from_sums(0.5 * c2, 0.5 * t1);
  pt.zeta2 = ratio_from_sums(0.5 * c1, 0.5 * t2);
  return pt;
}

NegativityResult negativity(double zeta1, double zeta2) {
  if (!(std::abs(zeta1) <= 1.0) || !(std::abs(zeta2) <= 1.0)) throw DomainError("negativity needs |zeta| <= 1");
  if (zeta1 >= 0.0 && zeta2 >= 0.0) return {0.0, false};
  const double den = (1.0 - std::abs(zeta1)) * (1.0 - std::abs(zeta2));
  if (den <= 1e-300) return {std::numeric_limits<double>::infinity(), true};
  return {(1.0 - zeta1) * (1.0 - zeta2) / den - 1.0, false};
}

NegativityResult negativity_uv(double u, double v, double zeta1, double zeta2) {
  if (zeta1 >= 0.0 && zeta2 >= 0.0) return {0.0, false};
  const double den = 1.0 + std::abs(v) - (std::abs(zeta1) + std::abs(zeta2));
  if (den <= 1e-300) return {std::numeric_limits<double>::infinity(), true};
  return {(1.0 - u + v) / den - 1.0, false};
}

PTMoments pt_moments(const Alphas& a) {
  PTMoments m;
  const double s12 = a.a1 + a.a2;
  const double s34 = a.a3 + a.a4;
  m.X1 = (s12 - 2.0 * a.a5) * (s12 - 2.0 * a.a5) - (s34 + 2.0 * a.a6) * (s34 + 2.0 * a.a6);
  m.X2 = (s12 + 2.0 * a.a5) * (s12 + 2.0 * a.a5) - (s34 - 2.0 * a.a6) * (s34 - 2.0 * a.a6);
  if (!(m.X1 > 0.0) || !(m.X2 > 0.0)) throw NumericalError("trace moments undefined (X1 or X2 not positive)");
  m.beta1 = std::sqrt(m.X1 / m.X2);
  m.beta2 = 4.0 * m.X1 / (m.X1 + 3.0 * m.X2 - 12.0 * (a.a5 * a.a5 - a.a3 * a.a4));
  const double b1 = m.beta1, b2 = m.beta2;
  const double d = 2.0 * (4.0 * b1 * b1 - b1 * b1 * b2 - 3.0 * b2);
  double inner = 3.0 * b2 * (16.0 * b1 * b1 - b2 * (3.0 - b1) * (3.0 - b1));
  if (inner < 0.0) {
    if (inner < -1e-12) throw NumericalError("moment equations have no real solution");
    inner = 0.0;
    m.clamped = true;
  }
  const double s = -3.0 * b2 * (1.0 + b1) + std::sqrt(inner);
  m.u = (1.0 - b1) * s / d;
  m.v = -1.0 + (1.0 + b1) * s / d;
  double disc = m.u * m.u - 4.0 * m.v;
  if (disc < 0.0) {
    if (disc < -1e-12) throw NumericalError("negative discriminant " + fmt(disc) + " in the moment method");
    disc = 0.0;
    m.clamped = true;
  }
  const double r = std::sqrt(disc);
  m.zeta1 = 0.5 * (m.u + r);
  m.zeta2 = 0.5 * (m.u - r);
  return m;
}

PTMoments pt_moments(const QuadraticKernel& sigma) { return pt_moments(alphas(partial_transpose(sigma))); }

bool check_separable(double omega1, double omega2, double beta) {
  const double x = 0.5 * omega1 * beta, y = 0.5 * omega2 * beta;
  return x * std::tanh(x) - y / std::tanh(y) <= 0.0 && x / std::tanh(x) - y * std::tanh(y) >= 0.0;
}

double boundary_g(double z, double tol) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("boundary function needs z > 0");
  const double target = z / std::tanh(z);
  auto f = [&](double y) { return y * std::tanh(y) - target; };
  double hi = target + 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  const double y = bisect(f, 0.0, hi, tol, "boundary_g");
  return y / z;
}

double boundary_g_inverse(double r, double tol) {
  if (!(r > 1.0)) throw DomainError("g^{-1} needs a ratio above 1");
  auto f = [&](double x) { return r * x * std::tanh(r * x) - x / std::tanh(x); };
  double lo = 1e-8, hi = 1.0;
  if (f(lo) >= 0.0) throw BracketError("g^{-1}: lower end already past the boundary", lo, hi);
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw BracketError("g^{-1}: no sign change found", lo, hi);
  }
  return bisect(f, lo, hi, tol, "g^{-1}");
}

BoundaryTable::BoundaryTable(double z_min, double z_max, int nodes) {
  if (!(z_min > 0.0) || !(z_max > z_min) || nodes < 2) throw DomainError("invalid boundary table range");
  const double lr = std::log(z_max / z_min);
  for (int i = 0; i < nodes; ++i) {
    const double z = z_min * std::exp(lr * i / (nodes - 1));
    zs_.push_back(z);
    gs_.push_back(boundary_g(z));
  }
  // Exact slopes from implicit differentiation of y tanh y = z coth z.
  const std::size_t n = zs_.size();
  slopes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = zs_[i], y = z * gs_[i];
    const double sz = std::sinh(z), cy = std::cosh(y);
    const double dy = (1.0 / std::tanh(z) - z / (sz * sz)) / (std::tanh(y) + y / (cy * cy));
    slopes_[i] = (dy - gs_[i]) / z;
  }
  direct_ = false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double zm = 0.5 * (zs_[i] + zs_[i + 1]);
    err_ = std::max(err_, std::abs((*this)(zm) - boundary_g(zm)));
  }
  direct_ = err_ > kInterpolationTol;
}

double BoundaryTable::operator()(double z) const {
  if (z < zs_.front() || z > zs_.back()) throw DomainError("z outside the tabulated boundary range");
  if (direct_) return boundary_g(z);
  auto it = std::upper_bound(zs_.begin(), zs_.end(), z);
  std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(it - zs_.begin()), zs_.size() - 1);
  const std::size_t i = j - 1;
  const double h = zs_[j] - zs_[i];
  const double s = (z - zs_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * gs_[i] + (s3 - 2 * s2 + s) * h * slopes_[i] + (-2 * s3 + 3 * s2) * gs_[j] +
         (s3 - s2) * h * slopes_[j];
}

CriticalTemp critical_temperature(double omega1, double omega2) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0)) throw DomainError("frequencies must be positive");
  CriticalTemp c;
  if (omega1 == omega2) return c;
  const double wmin = std::min(omega1, omega2), wmax = std::max(omega1, omega2);
  c.x_c = boundary_g_inverse(wmax / wmin);
  c.y_c = c.x_c * wmax / wmin;
  c.tc_exact = wmin / (2.0 * c.x_c);
  c.tc_approx = wmin / std::log((wmax + wmin) / (wmax - wmin));
  return c;
}

double critical_temperature(double omega1, double omega2, TcMethod method) {
  const auto c = critical_temperature(omega1, omega2);
  return method == TcMethod::exact ? c.tc_exact : c.tc_approx;
}

NegativityPoint negativity_at(const QuenchSpec& spec, double beta) {
  const auto [m1, m2] = normal_modes(spec);
  NegativityPoint p;
  if (spec.is_constant()) {
    const auto pt = pt_spectrum_const(m1.omega_f, m2.omega_f, beta);
    p.zeta1 = pt.zeta1;
    p.zeta2 = pt.zeta2;
  } else {
    const auto a = alphas_from_modes(mode_thermo(m1, beta), mode_thermo(m2, beta));
    const auto mom = pt_moments(a);
    p.zeta1 = mom.zeta1;
    p.zeta2 = mom.zeta2;
    p.clamped = mom.clamped;
  }
  p.n = negativity(p.zeta1, p.zeta2);
  return p;
}

double vanishing_temperature(const QuenchSpec& spec, double tol_T) {
  const auto [m1, m2] = normal_modes(spec);
  if (spec.is_constant()) return critical_temperature(m1.omega_f, m2.omega_f).tc_exact;
  double beta_cap = 1e4;
  for (const auto& m : {m1, m2})
    if (auto bs = downward_beta_star(m)) beta_cap = std::min(beta_cap, *bs * (1.0 - 1e-5));
  auto min_zeta = [&](double beta) {
    const auto p = negativity_at(spec, beta);
    return std::min(p.zeta1, p.zeta2);
  };
  double beta_lo = std::min(1e-3, 0.5 * beta_cap);
  if (min_zeta(beta_lo) < 0.0) throw BracketError("entangled already at the highest probed temperature", beta_lo, beta_lo);
  double beta_hi = beta_lo;
  while (true) {
    const double next = std::min(beta_hi * 2.0, beta_cap);
    if (min_zeta(next) < 0.0) {
      beta_hi = next;
      break;
    }
    if (next >= beta_cap) return 0.0;
    beta_lo = next;
    beta_hi = next;
  }
  // Work in T so the tolerance applies to the temperature directly.
  auto f = [&](double T) { return min_zeta(1.0 / T); };
  return bisect(f, 1.0 / beta_hi, 1.0 / beta_lo, tol_T, "vanishing temperature");
}

ZeroTemperatureLimit negativity_zero_temperature(const QuenchSpec& spec, double beta_start, double rel_tol) {
  ZeroTemperatureLimit out;
  double beta = beta_start;
  double prev = negativity_at(spec, beta).n.value;
  for (int k = 0; k < 30; ++k) {
    const double next_beta = 2.0 * beta;
    double cur = 0.0;
    try {
      cur = negativity_at(spec, next_beta).n.value;
    } catch (const std::exception&) {
      break;
    }
    const double rel = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
    beta = next_beta;
    prev = cur;
    if (rel < rel_tol) {
      out.converged = true;
      break;
    }
  }
  out.value = prev;
  out.beta = beta;
  return out;
}

}  // namespace quench
