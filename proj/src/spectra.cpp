#include "quench/spectra.hpp"

#include <cmath>
#include <numbers>

#include "quench/errors.hpp"
#include "quench/quadrature.hpp"

namespace quench {

namespace {

void check_index(int n) {
  if (n < 0 || n > kMaxEigenIndex) {
    throw NumericalError("eigenfunction index " + std::to_string(n) + " exceeds the stable bound " +
                         std::to_string(kMaxEigenIndex));
  }
}

// Spectrum of norm * exp(-a_in x^2 - a_out x'^2 + 2 c x x').
SpectralData1D ladder(double norm, double a_in, double a_out, double c) {
  const double s = a_in + a_out;
  const double disc = s * s - 4.0 * c * c;
  if (!(s > 0.0) || !(disc > 0.0)) {
    throw DomainError("kernel has no discrete spectrum (a1 + a2 <= 2|b|)");
  }
  SpectralData1D sd;
  sd.eps0 = std::sqrt(disc);
  sd.xi = 2.0 * c / (s + sd.eps0);
  sd.lead = norm * std::sqrt(2.0 * std::numbers::pi / (s + sd.eps0));
  sd.alpha0 = sd.eps0 - (a_in - a_out);
  if (!(sd.alpha0 > 0.0)) throw DomainError("eigenfunctions are not square integrable");
  return sd;
}

}  // namespace

double SpectralData1D::eigenvalue(int n) const { return lead * std::pow(xi, n); }

SpectralData1D eigendecompose_1d(const QuadraticKernel& k) {
  if (k.dim() != 1) throw DomainError("one-particle decomposition needs a dim=1 kernel");
  const auto& q = k.q();
  return ladder(k.norm(), q(1, 1), q(0, 0), -q(0, 1));
}

double BipartiteSpectralData::eigenvalue(int m, int n) const { return lead * std::pow(xi1, m) * std::pow(xi2, n); }

BipartiteSpectralData eigendecompose_bipartite(const QuadraticKernel& k) {
  if (k.dim() != 2) throw DomainError("bipartite decomposition needs a dim=2 kernel");
  Eigen::Matrix2d r;
  r << 1.0, 1.0, 1.0, -1.0;
  r /= std::numbers::sqrt2;
  Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
  t.topLeftCorner<2, 2>() = r;
  t.bottomRightCorner<2, 2>() = r;
  const Eigen::Matrix4d qy = t * k.q() * t;
  // y1 lives at indices 0 (out) and 2 (in), y2 at 1 and 3.
  const double scale = std::max(1.0, qy.cwiseAbs().maxCoeff());
  for (int i : {0, 2})
    for (int j : {1, 3})
      if (std::abs(qy(i, j)) > 1e-12 * scale) {
        throw NumericalError("kernel does not factorize into normal modes; use the moment method");
      }
  BipartiteSpectralData sd;
  const double half_norm = std::sqrt(k.norm());
  sd.mode1 = ladder(half_norm, qy(2, 2), qy(0, 0), -qy(0, 2));
  sd.mode2 = ladder(half_norm, qy(3, 3), qy(1, 1), -qy(1, 3));
  sd.xi1 = sd.mode1.xi;
  sd.xi2 = sd.mode2.xi;
  sd.eps1 = sd.mode1.eps0;
  sd.eps2 = sd.mode2.eps0;
  sd.mu1 = 0.5 * sd.mode1.alpha0;
  sd.mu2 = 0.5 * sd.mode2.alpha0;
  sd.lead = sd.mode1.lead * sd.mode2.lead;
  sd.rotation = r;
  return sd;
}

double log_eigenfunction_norm_sq(int n, double eps, double alpha) {
  check_index(n);
  if (!(eps > 0.0) || !(alpha > 0.0)) throw DomainError("eigenfunction parameters must be positive");
  const double d = eps / alpha - 1.0;
  const double lgn = std::lgamma(n + 1.0);
  double lmax = -INFINITY;
  std::vector<double> logs, signs;
  for (int k = 0; k <= n; ++k) {
    const int p = n - k;
    if (p > 0 && d == 0.0) continue;
    double l = (2.0 * n - k) * std::numbers::ln2 + 2.0 * lgn + std::lgamma(p + 0.5) - std::lgamma(k + 1.0) -
               2.0 * std::lgamma(p + 1.0);
    double sg = 1.0;
    if (p > 0) {
      l += p * std::log(std::abs(d));
      if (d < 0.0 && (p % 2 == 1)) sg = -1.0;
    }
    logs.push_back(l);
    signs.push_back(sg);
    lmax = std::max(lmax, l);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) acc += signs[i] * std::exp(logs[i] - lmax);
  if (!(acc > 0.0)) throw NumericalError("normalization sum lost all significance at index " + std::to_string(n));
  return lmax + std::log(acc) - 0.5 * std::log(alpha);
}

double normalization_constant(int n, double eps, double alpha) {
  return std::exp(-0.5 * log_eigenfunction_norm_sq(n, eps, alpha));
}

double eigenfunction_eval(const SpectralData1D& sd, int n, double x) {
  check_index(n);
  const double z = std::sqrt(sd.eps0) * x;
  const double psi = hermite_functions(n, z)[static_cast<std::size_t>(n)];
  // psi_n(z) = H_n(z) exp(-z^2/2) / sqrt(2^n n! sqrt(pi)).
  const double log_h = 0.5 * (n * std::numbers::ln2 + std::lgamma(n + 1.0) + 0.5 * std::log(std::numbers::pi));
  const double log_c = -0.5 * log_eigenfunction_norm_sq(n, sd.eps0, sd.alpha0);
  return psi * std::exp(0.5 * (sd.eps0 - sd.alpha0) * x * x + log_h + log_c);
}

double eigenfunction_eval(const BipartiteSpectralData& sd, int m, int n, double x1, double x2) {
  const Eigen::Vector2d y = sd.rotation * Eigen::Vector2d(x1, x2);
  return eigenfunction_eval(sd.mode1, m, y[0]) * eigenfunction_eval(sd.mode2, n, y[1]);
}

double renyi_entropy(double xi, double alpha) {
  if (!(xi >= 0.0 && xi < 1.0)) throw DomainError("entropy needs 0 <= xi < 1");
  if (!(alpha > 0.0)) throw DomainError("Renyi order must be positive");
  if (alpha == 1.0) return von_neumann_entropy(xi);
  if (xi == 0.0) return 0.0;
  return (alpha * std::log1p(-xi) - std::log1p(-std::pow(xi, alpha))) / (1.0 - alpha);
}

double von_neumann_entropy(double xi) {
  if (!(xi >= 0.0 && xi < 1.0)) throw DomainError("entropy needs 0 <= xi < 1");
  if (xi == 0.0) return 0.0;
  return -std::log1p(-xi) - xi * std::log(xi) / (1.0 - xi);
}

EntropyReport entropies(double xi1, double xi2, std::span<const double> renyi_orders) {
  EntropyReport r;
  r.xi1 = xi1;
  r.xi2 = xi2;
  r.s_von = von_neumann_entropy(xi1) + von_neumann_entropy(xi2);
  for (double a : renyi_orders) {
    const double s1 = renyi_entropy(xi1, a), s2 = renyi_entropy(xi2, a);
    r.renyi_modes[a] = {s1, s2};
    r.renyi[a] = s1 + s2;
  }
  return r;
}

SubstateSpectrum substate_ratio(const QuadraticKernel& rho) {
  const QuadraticKernel sub = reduce_substate(rho);
  const auto& q = sub.q();
  SubstateSpectrum out;
  double b3 = -q(0, 1);
  if (b3 < 0.0) {
    out.sign_flipped = true;
    b3 = -b3;
  }
  out.zeta = ladder(sub.norm(), q(1, 1), q(0, 0), b3).xi;
  return out;
}

double mutual_information(const QuadraticKernel& rho) {
  const auto sd = eigendecompose_bipartite(rho);
  const double s_sub = von_neumann_entropy(substate_ratio(rho).zeta);
  return 2.0 * s_sub - (von_neumann_entropy(sd.xi1) + von_neumann_entropy(sd.xi2));
}

EntropyReport entropy_report(const QuadraticKernel& rho, std::span<const double> renyi_orders) {
  const auto sd = eigendecompose_bipartite(rho);
  EntropyReport r = entropies(sd.xi1, sd.xi2, renyi_orders);
  const auto sub = substate_ratio(rho);
  if (sub.sign_flipped) r.warnings.emplace_back("negative substate cross coefficient; magnitude used");
  r.zeta = sub.zeta;
  r.s_sub = von_neumann_entropy(sub.zeta);
  r.mutual = 2.0 * r.s_sub - r.s_von;
  return r;
}

nlohmann::json EntropyReport::to_json() const {
  nlohmann::json renyi_obj = nlohmann::json::object();
  for (auto [a, v] : renyi) {
    char key[32];
    std::snprintf(key, sizeof key, "%g", a);
    renyi_obj[key] = v;
  }
  nlohmann::json j = {{"xi1", xi1}, {"xi2", xi2}, {"S_von", s_von}, {"S_renyi", renyi_obj}, {"zeta", zeta}, {"I", mutual}};
  if (!warnings.empty()) j["warnings"] = warnings;
  return j;
}

}  // namespace quench
