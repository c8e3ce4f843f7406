#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "quench/core.hpp"

namespace quench {

class FrequencySchedule {
 public:
  enum class Kind { constant, sudden, sinusoidal, tabulated };

  static FrequencySchedule constant(double omega);
  static FrequencySchedule sudden(double omega_i, double omega_f);
  // omega(t) = omega_i + (omega_f - omega_i) sin(rate t)
  static FrequencySchedule sinusoidal(double omega_i, double omega_f, double rate);
  // Piecewise-linear interpolation of (t, omega) samples.
  static FrequencySchedule tabulated(std::vector<double> t, std::vector<double> omega);
  // Two columns (t, omega); a non-numeric first line is treated as a header.
  static FrequencySchedule from_csv(std::istream& in);
  static FrequencySchedule load_csv(const std::string& path);

  Kind kind() const { return kind_; }
  double initial() const;
  // Value at t; for sudden schedules t = 0 gives the initial frequency.
  double at(double t) const;
  // Right limit at t, which is what the equation of motion sees.
  double after(double t) const;

 private:
  double raw(double t, bool right) const;

  Kind kind_ = Kind::constant;
  double w0_ = 1.0, w1_ = 1.0, rate_ = 0.0;
  std::vector<double> ts_, ws_;
};

enum class TimeDomain { real, euclidean };

struct ErmakovSample {
  double t = 0.0;
  double b = 1.0;
  double db = 0.0;
  double d2b = 0.0;
};

class ErmakovSolution {
 public:
  ErmakovSolution(TimeDomain domain, double tol, double max_step, std::vector<ErmakovSample> samples,
                  std::size_t rejected);

  TimeDomain domain() const { return domain_; }
  double tolerance() const { return tol_; }
  double max_step() const { return max_step_; }
  std::size_t rejected_steps() const { return rejected_; }
  const std::vector<ErmakovSample>& samples() const { return samples_; }
  double t_max() const { return samples_.back().t; }

  // Quintic Hermite dense output between accepted steps.
  double b_at(double t) const;
  double db_at(double t) const;

 private:
  std::size_t interval(double t) const;

  TimeDomain domain_;
  double tol_, max_step_;
  std::vector<ErmakovSample> samples_;
  std::size_t rejected_;
};

// Adaptive Dormand-Prince 5(4) integration of b'' + w(t)^2 b = w(0)^2 / b^3.
ErmakovSolution solve_real(const FrequencySchedule& schedule, double t_max, double tol, double max_step = 0.0);

// Euclidean counterpart b'' - wf^2 b = -wi^2 / b^3 for a sudden quench.
ErmakovSolution solve_euclidean(const ModeQuench& mode, double beta_max, double tol, double max_step = 0.0);

struct PhaseSample {
  double t = 0.0;
  double gamma = 0.0;
};

// Cumulative integral of omega_i / b^2 at every accepted step.
std::vector<PhaseSample> gamma_phase(const ErmakovSolution& sol, double omega_i);
double gamma_at(const ErmakovSolution& sol, double omega_i, double t);

// w(0)^2 / b^2 + b'^2 + w(t)^2 b^2 along a real-time solution.
double ermakov_energy(const FrequencySchedule& schedule, const ErmakovSample& s);

}  // namespace quench
