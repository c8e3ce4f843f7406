#pragma once

#include <optional>
#include <utility>

namespace quench {

inline constexpr double kBetaFloor = 1e-8;
// Above this value of omega_f * beta the closed forms switch to their asymptotic branch.
inline constexpr double kAsymptoticThreshold = 300.0;

struct QuenchSpec {
  double k0_i = 1.0;
  double k0_f = 1.0;
  double J_i = 0.0;
  double J_f = 0.0;

  void validate() const;
  bool is_constant() const { return k0_i == k0_f && J_i == J_f; }
};

struct ModeQuench {
  double omega_i = 1.0;
  double omega_f = 1.0;

  void validate() const;
  bool is_constant() const { return omega_i == omega_f; }
};

struct Temperature {
  double T = 1.0;

  static Temperature from_beta(double beta);
  double beta() const;
};

struct ModeThermo {
  double omega_i = 0.0;
  double omega_f = 0.0;
  double beta = 0.0;
  double b = 1.0;
  double inv_b = 1.0;
  double gamma_E = 0.0;
  double coth_gamma = 0.0;
  double csch_gamma = 0.0;
  double a_cap = 0.0;
  double a_plus = 0.0;
  double a_minus = 0.0;
  double xi = 0.0;
  double eps = 0.0;
};

std::pair<ModeQuench, ModeQuench> normal_modes(const QuenchSpec& spec);

// Threshold beyond which b^2 turns negative; empty for upward or constant quenches.
std::optional<double> downward_beta_star(const ModeQuench& mode);

ModeThermo mode_thermo(const ModeQuench& mode, double beta);

double purity_single(const ModeThermo& mt);
double partition_single(const ModeThermo& mt);

// Closed forms used both by mode_thermo and as oracles for the ODE solver.
double euclidean_b(const ModeQuench& mode, double beta);
double euclidean_gamma(const ModeQuench& mode, double beta);
double realtime_b(const ModeQuench& mode, double t);
// Continuous branch of the real-time phase.
double realtime_gamma(const ModeQuench& mode, double t);

}  // namespace quench
