#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "quench/kernel.hpp"

namespace quench {

inline constexpr int kMaxEigenIndex = 60;

// Closed-form spectrum of a one-particle Gaussian kernel: lambda_n = lead * xi^n,
// right eigenfunctions H_n(sqrt(eps0) x) exp(-alpha0 x^2 / 2).
struct SpectralData1D {
  double eps0 = 0.0;
  double alpha0 = 0.0;
  double xi = 0.0;
  double lead = 0.0;

  double eigenvalue(int n) const;
  // Sum of the whole ladder, lead / (1 - xi).
  double total() const { return lead / (1.0 - xi); }
};

SpectralData1D eigendecompose_1d(const QuadraticKernel& k);

struct BipartiteSpectralData {
  SpectralData1D mode1, mode2;
  double xi1 = 0, xi2 = 0;
  double eps1 = 0, eps2 = 0;
  double mu1 = 0, mu2 = 0;
  double lead = 0;
  // Maps (x1, x2) to the decoupled coordinates (y1, y2).
  Eigen::Matrix2d rotation;

  double eigenvalue(int m, int n) const;
};

BipartiteSpectralData eigendecompose_bipartite(const QuadraticKernel& k);

// log of the integral of H_n(sqrt(eps) x)^2 exp(-alpha x^2) over the real line.
double log_eigenfunction_norm_sq(int n, double eps, double alpha);
// Inverse square root of the integral above, the factor that normalizes the eigenfunction.
double normalization_constant(int n, double eps, double alpha);

double eigenfunction_eval(const SpectralData1D& sd, int n, double x);
double eigenfunction_eval(const BipartiteSpectralData& sd, int m, int n, double x1, double x2);

double renyi_entropy(double xi, double alpha);
double von_neumann_entropy(double xi);

struct EntropyReport {
  double xi1 = 0, xi2 = 0;
  std::map<double, double> renyi;
  std::map<double, std::pair<double, double>> renyi_modes;
  double s_von = 0;
  double zeta = 0;
  double s_sub = 0;
  double mutual = 0;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

// Mode-resolved and total entropies for a two-mode geometric spectrum.
EntropyReport entropies(double xi1, double xi2, std::span<const double> renyi_orders);

struct SubstateSpectrum {
  double zeta = 0;
  bool sign_flipped = false;
};
SubstateSpectrum substate_ratio(const QuadraticKernel& rho);

double mutual_information(const QuadraticKernel& rho);

EntropyReport entropy_report(const QuadraticKernel& rho, std::span<const double> renyi_orders);

}  // namespace quench
