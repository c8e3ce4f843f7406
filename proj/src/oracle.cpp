#include "quench/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "quench/errors.hpp"
#include "quench/quadrature.hpp"

namespace quench {

namespace {

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

QuadratureGrid grid_for_scale(double gamma, int n, GridKind kind) {
  if (!(gamma > 0.0)) throw DomainError("kernel envelope is not integrable (non-positive exponent block)");
  if (kind == GridKind::gauss_legendre) return QuadratureGrid::legendre(n, 8.0 / std::sqrt(gamma));
  return QuadratureGrid::hermite(n, gamma);
}

struct Points {
  int dim;
  int count;
  std::vector<double> coords;  // count * dim, row-major
  std::vector<double> log_sqrt_w;
};

Points tensor_points(const QuadratureGrid& g, int dim) {
  Points p;
  p.dim = dim;
  const int n = g.n_points;
  p.count = dim == 1 ? n : n * n;
  p.coords.resize(static_cast<std::size_t>(p.count) * dim);
  p.log_sqrt_w.resize(static_cast<std::size_t>(p.count));
  for (int i = 0; i < p.count; ++i) {
    if (dim == 1) {
      p.coords[i] = g.nodes[i];
      p.log_sqrt_w[i] = 0.5 * std::log(g.weights[i]);
    } else {
      const int a = i / n, b = i % n;
      p.coords[2 * i] = g.nodes[a];
      p.coords[2 * i + 1] = g.nodes[b];
      p.log_sqrt_w[i] = 0.5 * (std::log(g.weights[a]) + std::log(g.weights[b]));
    }
  }
  return p;
}

Eigen::MatrixXd weighted_matrix(const QuadraticKernel& k, const QuadratureGrid& g) {
  const int d = k.dim();
  const Points pts = tensor_points(g, d);
  const int n = pts.count;
  const Eigen::MatrixXd qo = k.q_out(), qi = k.q_in(), qc = k.q_cross();
  std::vector<double> out_part(n), in_part(n);
  Eigen::MatrixXd cross_in(d, n);  // Q_cross * x_j
  for (int i = 0; i < n; ++i) {
    Eigen::Map<const Eigen::VectorXd> x(&pts.coords[static_cast<std::size_t>(i) * d], d);
    out_part[i] = x.dot(qo * x) - pts.log_sqrt_w[i];
    in_part[i] = x.dot(qi * x) - pts.log_sqrt_w[i];
    cross_in.col(i) = 2.0 * qc * x;
  }
  const double log_norm = std::log(k.norm());
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double c = 0.0;
      for (int a = 0; a < d; ++a) c += pts.coords[static_cast<std::size_t>(i) * d + a] * cross_in(a, j);
      m(i, j) = std::exp(log_norm - out_part[i] - in_part[j] - c);
    }
  }
  return m;
}

bool symmetric_kernel(const QuadraticKernel& k) {
  const double scale = std::max(1.0, k.q().cwiseAbs().maxCoeff());
  const double tol = 1e-13 * scale;
  return (k.q_out() - k.q_in()).cwiseAbs().maxCoeff() <= tol &&
         (k.q_cross() - k.q_cross().transpose()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<std::complex<double>> sorted_by_magnitude(const Eigen::VectorXcd& ev) {
  std::vector<std::complex<double>> v(ev.data(), ev.data() + ev.size());
  std::stable_sort(v.begin(), v.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
  return v;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& z) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  return qr.householderQ() * Eigen::MatrixXd::Identity(z.rows(), z.cols());
}

// Block subspace iteration with Rayleigh-Ritz extraction of the dominant eigenvalues.
std::vector<std::complex<double>> dominant_eigenvalues(const Eigen::MatrixXd& m, int k, int* iterations) {
  const int n = static_cast<int>(m.rows());
  const int p = std::min(n, std::max(2 * k + 16, 48));
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd v(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) v(i, j) = gauss(rng);
  v = orthonormalize(v);

  std::vector<std::complex<double>> prev;
  int stable = 0;
  for (int it = 1; it <= 3000; ++it) {
    const Eigen::MatrixXd z = m * v;
    const Eigen::MatrixXd h = v.transpose() * z;
    Eigen::EigenSolver<Eigen::MatrixXd> es(h, false);
    auto cur = sorted_by_magnitude(es.eigenvalues());
    cur.resize(static_cast<std::size_t>(k));
    if (!prev.empty()) {
      double change = 0.0;
      for (int i = 0; i < k; ++i) change = std::max(change, std::abs(cur[i] - prev[i]));
      stable = change <= 1e-14 * std::abs(cur[0]) ? stable + 1 : 0;
    }
    prev = cur;
    if (stable >= 3) {
      if (iterations) *iterations = it;
      return cur;
    }
    v = orthonormalize(z);
  }
  throw NumericalError("subspace iteration did not converge");
}

NumericSpectrum to_spectrum(const std::vector<std::complex<double>>& vals, int size, int iters) {
  NumericSpectrum s;
  s.matrix_size = size;
  s.iterations = iters;
  s.error_estimate = std::numeric_limits<double>::quiet_NaN();
  for (const auto& z : vals) {
    s.eigenvalues.push_back(z.real());
    s.imag_residue = std::max(s.imag_residue, std::abs(z.imag()));
  }
  return s;
}

}  // namespace

QuadratureGrid QuadratureGrid::legendre(int n, double half_width) {
  if (n < 32) throw DomainError("quadrature grids need at least 32 points per axis");
  if (!(half_width > 0.0)) throw DomainError("grid half-width must be positive");
  const auto rule = gauss_legendre(n);
  QuadratureGrid g;
  g.kind = GridKind::gauss_legendre;
  g.n_points = n;
  g.param = half_width;
  for (int i = 0; i < n; ++i) {
    g.nodes.push_back(half_width * rule.nodes[i]);
    g.weights.push_back(half_width * rule.weights[i]);
  }
  return g;
}

QuadratureGrid QuadratureGrid::hermite(int n, double gamma) {
  if (n < 32) throw DomainError("quadrature grids need at least 32 points per axis");
  if (!(gamma > 0.0)) throw DomainError("Gauss-Hermite scale must be positive");
  const auto rule = gauss_hermite_plain(n);
  const double s = 1.0 / std::sqrt(gamma);
  QuadratureGrid g;
  g.kind = GridKind::scaled_hermite;
  g.n_points = n;
  g.param = gamma;
  for (int i = 0; i < n; ++i) {
    g.nodes.push_back(s * rule.nodes[i]);
    g.weights.push_back(s * rule.weights[i]);
  }
  return g;
}

QuadratureGrid QuadratureGrid::for_kernel(const QuadraticKernel& k, int n, GridKind kind) {
  // Hermite weights track the column decay. A finite box must instead reach the slowest direction,
  // otherwise mass beyond +-L is lost identically on every grid and refinement cannot see it.
  if (kind == GridKind::scaled_hermite) return grid_for_scale(min_eigenvalue(k.q_in()), n, kind);
  const Eigen::MatrixXd diag = k.q_out() + k.q_in() + k.q_cross() + k.q_cross().transpose();
  const double gamma = std::min({min_eigenvalue(k.q_in()), min_eigenvalue(k.q_out()), min_eigenvalue(diag)});
  return grid_for_scale(gamma, n, kind);
}

QuadratureGrid QuadratureGrid::for_trace(const QuadraticKernel& k, int n, GridKind kind) {
  const Eigen::MatrixXd diag = k.q_out() + k.q_in() + k.q_cross() + k.q_cross().transpose();
  return grid_for_scale(min_eigenvalue(diag), n, kind);
}

NumericSpectrum nystrom_spectrum(const QuadraticKernel& k, const QuadratureGrid& grid, int top_k) {
  const Eigen::MatrixXd m = weighted_matrix(k, grid);
  const int n = static_cast<int>(m.rows());
  if (top_k <= 0 || top_k > n) top_k = n;
  // Dense solves stay affordable below these sizes; larger requests iterate on a subspace.
  constexpr int kSymmetricLimit = 1600, kGeneralLimit = 500;
  if (symmetric_kernel(k) && (n <= kSymmetricLimit || top_k == n)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
    auto vals = sorted_by_magnitude(es.eigenvalues().cast<std::complex<double>>());
    vals.resize(static_cast<std::size_t>(top_k));
    return to_spectrum(vals, n, 0);
  }
  if (n <= kGeneralLimit || top_k == n) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    if (es.info() != Eigen::Success) throw NumericalError("general eigensolver did not converge");
    auto vals = sorted_by_magnitude(es.eigenvalues());
    vals.resize(static_cast<std::size_t>(top_k));
    return to_spectrum(vals, n, 0);
  }
  int iters = 0;
  const auto vals = dominant_eigenvalues(m, top_k, &iters);
  return to_spectrum(vals, n, iters);
}

NumericSpectrum nystrom_spectrum_refined(const QuadraticKernel& k, int n, int top_k, GridKind kind) {
  if (top_k <= 0) throw DomainError("refined spectra need an explicit eigenvalue count");
  const NumericSpectrum coarse = nystrom_spectrum(k, QuadratureGrid::for_kernel(k, n, kind), top_k);
  NumericSpectrum fine = nystrom_spectrum(k, QuadratureGrid::for_kernel(k, 2 * n, kind), top_k);
  fine.error_estimate = 0.0;
  for (int i = 0; i < top_k; ++i) {
    fine.error_estimate = std::max(fine.error_estimate, std::abs(fine.eigenvalues[i] - coarse.eigenvalues[i]));
  }
  fine.imag_residue = std::max(fine.imag_residue, coarse.imag_residue);
  return fine;
}

double trace_power(const QuadraticKernel& k, int p, const QuadratureGrid& grid) {
  if (p < 1 || p > 3) throw DomainError("trace powers are supported for p = 1, 2, 3");
  if (p == 1) {
    const Points pts = tensor_points(grid, k.dim());
    std::vector<double> x(static_cast<std::size_t>(k.dim()));
    double acc = 0.0;
    for (int i = 0; i < pts.count; ++i) {
      for (int a = 0; a < k.dim(); ++a) x[a] = pts.coords[static_cast<std::size_t>(i) * k.dim() + a];
      acc += std::exp(2.0 * pts.log_sqrt_w[i]) * k(x, x);
    }
    return acc;
  }
  const Eigen::MatrixXd m = weighted_matrix(k, grid);
  if (p == 2) return m.cwiseProduct(m.transpose()).sum();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym <= 1e-14 * m.cwiseAbs().maxCoeff()) {
    // Symmetric rank update halves the flops of the square.
    Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(m.rows(), m.cols());
    m2.selfadjointView<Eigen::Lower>().rankUpdate(m);
    const Eigen::MatrixXd full = m2.selfadjointView<Eigen::Lower>();
    return full.cwiseProduct(m).sum();
  }
  const Eigen::MatrixXd m2 = m * m;
  return m2.cwiseProduct(m.transpose()).sum();
}

TraceResult trace_power_refined(const QuadraticKernel& k, int p, int n, GridKind kind) {
  auto grid = [&](int pts) {
    return p == 1 ? QuadratureGrid::for_trace(k, pts, kind) : QuadratureGrid::for_kernel(k, pts, kind);
  };
  const double coarse = trace_power(k, p, grid(n));
  const double fine = trace_power(k, p, grid(2 * n));
  return {fine, std::abs(fine - coarse)};
}

double nystrom_negativity(const QuadraticKernel& sigma, const QuadratureGrid& grid) {
  const NumericSpectrum s = nystrom_spectrum(sigma, grid, 0);
  double acc = 0.0;
  for (double v : s.eigenvalues) acc += std::abs(v);
  return acc - 1.0;
}

MehlerResult mehler_check(double t, double x, double y, int terms) {
  if (!(std::abs(t) < 0.5)) throw DomainError("Mehler series needs |t| < 1/2");
  if (terms < 1 || terms > 120) throw DomainError("Mehler term count must lie in [1, 120]");
  MehlerResult r;
  const double one_m = 1.0 - 4.0 * t * t;
  r.diverging = one_m < 1e-6;
  // H_n(x) H_n(y) t^n / n! = (2t)^n sqrt(pi) psi_n(x) psi_n(y) exp((x^2 + y^2) / 2).
  const auto px = hermite_functions(terms - 1, x);
  const auto py = hermite_functions(terms - 1, y);
  double acc = 0.0, pw = 1.0;
  for (int n = 0; n < terms; ++n) {
    acc += pw * px[n] * py[n];
    pw *= 2.0 * t;
  }
  const double scale = std::sqrt(std::numbers::pi) * std::exp(0.5 * (x * x + y * y));
  r.lhs = acc * scale;
  r.rhs = std::exp((4.0 * t * x * y - 4.0 * t * t * (x * x + y * y)) / one_m) / std::sqrt(one_m);
  // |psi_n| is bounded by pi^{-1/4}.
  const double q = 2.0 * std::abs(t);
  r.tail_estimate = scale / std::sqrt(std::numbers::pi) * std::pow(q, terms) / (1.0 - q);
  return r;
}

}  // namespace quench
