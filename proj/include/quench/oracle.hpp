#pragma once

#include <vector>

#include "quench/kernel.hpp"

namespace quench {

enum class GridKind { gauss_legendre, scaled_hermite };

// Per-axis nodes and weights; two-particle kernels use the tensor product.
struct QuadratureGrid {
  GridKind kind = GridKind::scaled_hermite;
  int n_points = 0;
  // Half-width L for Gauss-Legendre, Gaussian scale gamma for scaled Gauss-Hermite.
  double param = 0.0;
  std::vector<double> nodes, weights;

  static QuadratureGrid legendre(int n, double half_width);
  static QuadratureGrid hermite(int n, double gamma);
  // Grid adapted to the Gaussian envelope of the kernel's input block.
  static QuadratureGrid for_kernel(const QuadraticKernel& k, int n, GridKind kind = GridKind::scaled_hermite);
  // Grid adapted to the kernel's diagonal k(x, x).
  static QuadratureGrid for_trace(const QuadraticKernel& k, int n, GridKind kind = GridKind::scaled_hermite);
};

struct NumericSpectrum {
  // Sorted by magnitude, largest first.
  std::vector<double> eigenvalues;
  // Max deviation between the n and 2n grids over the reported eigenvalues; NaN for a single grid.
  double error_estimate = 0.0;
  // Largest imaginary part among the reported eigenvalues.
  double imag_residue = 0.0;
  int matrix_size = 0;
  int iterations = 0;

  bool converged(double tol) const { return error_estimate < 10.0 * tol && imag_residue < 1e-8; }
};

// Nystrom eigenvalues of the weighted kernel matrix. top_k = 0 requests the full spectrum.
NumericSpectrum nystrom_spectrum(const QuadraticKernel& k, const QuadratureGrid& grid, int top_k = 0);
// Top-k eigenvalues on grids with n and 2n points per axis.
NumericSpectrum nystrom_spectrum_refined(const QuadraticKernel& k, int n, int top_k,
                                         GridKind kind = GridKind::scaled_hermite);

struct TraceResult {
  double value = 0.0;
  double error_estimate = 0.0;

  bool converged(double tol) const { return error_estimate < 10.0 * tol; }
};

double trace_power(const QuadraticKernel& k, int p, const QuadratureGrid& grid);
TraceResult trace_power_refined(const QuadraticKernel& k, int p, int n, GridKind kind = GridKind::scaled_hermite);

// Sum of |lambda| minus one over the full discretized spectrum.
double nystrom_negativity(const QuadraticKernel& sigma, const QuadratureGrid& grid);

struct MehlerResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double tail_estimate = 0.0;
  bool diverging = false;
};

// Partial sum of t^n/n! H_n(x) H_n(y) against its closed form.
MehlerResult mehler_check(double t, double x, double y, int terms);

}  // namespace quench
