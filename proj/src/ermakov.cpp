#include "quench/ermakov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

#include "quench/errors.hpp"
#include "quench/quadrature.hpp"

namespace quench {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void require_positive(double w, double t) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw DomainError("non-positive frequency " + fmt(w) + " encountered at t = " + fmt(t));
  }
}

struct State {
  double b, db;
};

using Rhs = std::function<double(double t, double b)>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

ErmakovSolution integrate(const Rhs& accel, TimeDomain domain, double t_max, double tol, double max_step,
                          double omega_scale) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("integration horizon must be positive");
  if (!(tol >= 1e-13 && tol <= 1e-6)) throw DomainError("tolerance must lie in [1e-13, 1e-6]");
  if (max_step <= 0.0) max_step = t_max / 8.0;

  auto deriv = [&](double t, const State& y) { return State{y.db, accel(t, y.b)}; };

  std::vector<ErmakovSample> out;
  State y{1.0, 0.0};
  double t = 0.0;
  State k1 = deriv(t, y);
  out.push_back({t, y.b, y.db, k1.db});

  double h = std::min(max_step, 1e-2 / omega_scale);
  std::size_t rejected = 0;
  while (t < t_max) {
    if (t + h > t_max) h = t_max - t;
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      throw StepSizeError("step size underflow at t = " + fmt(t), t);
    }
    auto stage = [&](double c, std::initializer_list<std::pair<double, const State*>> terms) {
      State s = y;
      for (auto [a, k] : terms) {
        s.b += h * a * k->b;
        s.db += h * a * k->db;
      }
      return deriv(t + c * h, s);
    };
    const State k2 = stage(c2, {{a21, &k1}});
    const State k3 = stage(c3, {{a31, &k1}, {a32, &k2}});
    const State k4 = stage(c4, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    const State k5 = stage(c5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    const State k6 = stage(1.0, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    State yn = y;
    yn.b += h * (b1 * k1.b + b3 * k3.b + b4 * k4.b + b5 * k5.b + b6 * k6.b);
    yn.db += h * (b1 * k1.db + b3 * k3.db + b4 * k4.db + b5 * k5.db + b6 * k6.db);
    if (!(yn.b > 0.0) || !std::isfinite(yn.b)) {
      if (domain == TimeDomain::euclidean && h < 1e-10 * std::max(1.0, t)) {
        throw DomainError("b reached zero near beta = " + fmt(t));
      }
      h *= 0.25;
      ++rejected;
      continue;
    }
    const State k7 = deriv(t + h, yn);
    const double err_b = h * (e1 * k1.b + e3 * k3.b + e4 * k4.b + e5 * k5.b + e6 * k6.b + e7 * k7.b);
    const double err_db = h * (e1 * k1.db + e3 * k3.db + e4 * k4.db + e5 * k5.db + e6 * k6.db + e7 * k7.db);
    const double sc_b = tol * (1.0 + std::max(std::abs(y.b), std::abs(yn.b)));
    const double sc_db = tol * (1.0 + std::max(std::abs(y.db), std::abs(yn.db)));
    const double err = std::sqrt(0.5 * (std::pow(err_b / sc_b, 2) + std::pow(err_db / sc_db, 2)));
    if (err <= 1.0) {
      t = (t + h >= t_max) ? t_max : t + h;
      y = yn;
      k1 = k7;
      out.push_back({t, y.b, y.db, k7.db});
    } else {
      ++rejected;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = std::min(max_step, h * factor);
  }
  return ErmakovSolution(domain, tol, max_step, std::move(out), rejected);
}

}  // namespace

FrequencySchedule FrequencySchedule::constant(double omega) {
  require_positive(omega, 0.0);
  FrequencySchedule s;
  s.kind_ = Kind::constant;
  s.w0_ = s.w1_ = omega;
  return s;
}

FrequencySchedule FrequencySchedule::sudden(double omega_i, double omega_f) {
  require_positive(omega_i, 0.0);
  require_positive(omega_f, 0.0);
  FrequencySchedule s;
  s.kind_ = Kind::sudden;
  s.w0_ = omega_i;
  s.w1_ = omega_f;
  return s;
}

FrequencySchedule FrequencySchedule::sinusoidal(double omega_i, double omega_f, double rate) {
  require_positive(omega_i, 0.0);
  if (!std::isfinite(omega_f) || !std::isfinite(rate)) throw DomainError("sinusoidal schedule needs finite parameters");
  FrequencySchedule s;
  s.kind_ = Kind::sinusoidal;
  s.w0_ = omega_i;
  s.w1_ = omega_f;
  s.rate_ = rate;
  return s;
}

FrequencySchedule FrequencySchedule::tabulated(std::vector<double> t, std::vector<double> omega) {
  if (t.size() != omega.size() || t.size() < 2) throw DomainError("tabulated schedule needs at least two (t, omega) pairs");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i])) throw DomainError("tabulated schedule has a non-finite time");
    require_positive(omega[i], t[i]);
    if (i > 0 && !(t[i] > t[i - 1])) throw DomainError("tabulated schedule times must be strictly increasing");
  }
  if (t.front() > 0.0) throw DomainError("tabulated schedule must cover t = 0");
  FrequencySchedule s;
  s.kind_ = Kind::tabulated;
  s.ts_ = std::move(t);
  s.ws_ = std::move(omega);
  return s;
}

FrequencySchedule FrequencySchedule::from_csv(std::istream& in) {
  std::vector<double> ts, ws;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double t = 0.0, w = 0.0;
    if (!(row >> t >> w)) {
      if (ts.empty() && lineno == 1) continue;
      throw DomainError("malformed schedule row at line " + std::to_string(lineno));
    }
    ts.push_back(t);
    ws.push_back(w);
  }
  return tabulated(std::move(ts), std::move(ws));
}

FrequencySchedule FrequencySchedule::load_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open schedule file " + path);
  return from_csv(f);
}

double FrequencySchedule::raw(double t, bool right) const {
  switch (kind_) {
    case Kind::constant:
      return w0_;
    case Kind::sudden:
      return (t > 0.0 || (right && t == 0.0)) ? w1_ : w0_;
    case Kind::sinusoidal:
      return w0_ + (w1_ - w0_) * std::sin(rate_ * t);
    case Kind::tabulated: {
      if (t < ts_.front() || t > ts_.back()) {
        throw DomainError("t = " + fmt(t) + " lies outside the tabulated schedule");
      }
      auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
      if (it == ts_.end()) return ws_.back();
      const std::size_t j = static_cast<std::size_t>(it - ts_.begin());
      const double s = (t - ts_[j - 1]) / (ts_[j] - ts_[j - 1]);
      return ws_[j - 1] + s * (ws_[j] - ws_[j - 1]);
    }
  }
  return w0_;
}

double FrequencySchedule::initial() const { return at(0.0); }

double FrequencySchedule::at(double t) const {
  const double w = raw(t, false);
  require_positive(w, t);
  return w;
}

double FrequencySchedule::after(double t) const {
  const double w = raw(t, true);
  require_positive(w, t);
  return w;
}

ErmakovSolution::ErmakovSolution(TimeDomain domain, double tol, double max_step, std::vector<ErmakovSample> samples,
                                 std::size_t rejected)
    : domain_(domain), tol_(tol), max_step_(max_step), samples_(std::move(samples)), rejected_(rejected) {}

std::size_t ErmakovSolution::interval(double t) const {
  if (t < 0.0 || t > t_max()) throw DomainError("t = " + fmt(t) + " lies outside the solution range");
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double v, const ErmakovSample& s) { return v < s.t; });
  std::size_t j = static_cast<std::size_t>(it - samples_.begin());
  return std::clamp<std::size_t>(j, 1, samples_.size() - 1) - 1;
}

double ErmakovSolution::b_at(double t) const {
  const std::size_t i = interval(t);
  const auto& p = samples_[i];
  const auto& q = samples_[i + 1];
  const double h = q.t - p.t;
  const double s = (t - p.t) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double h00 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
  const double h01 = 10 * s3 - 15 * s4 + 6 * s5;
  const double h10 = s - 6 * s3 + 8 * s4 - 3 * s5;
  const double h11 = -4 * s3 + 7 * s4 - 3 * s5;
  const double h20 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
  const double h21 = 0.5 * (s3 - 2 * s4 + s5);
  return h00 * p.b + h01 * q.b + h * (h10 * p.db + h11 * q.db) + h * h * (h20 * p.d2b + h21 * q.d2b);
}

double ErmakovSolution::db_at(double t) const {
  const std::size_t i = interval(t);
  const auto& p = samples_[i];
  const auto& q = samples_[i + 1];
  const double h = q.t - p.t;
  const double s = (t - p.t) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
  const double d00 = -30 * s2 + 60 * s3 - 30 * s4;
  const double d10 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
  const double d11 = -12 * s2 + 28 * s3 - 15 * s4;
  const double d20 = 0.5 * (2 * s - 9 * s2 + 12 * s3 - 5 * s4);
  const double d21 = 0.5 * (3 * s2 - 8 * s3 + 5 * s4);
  return d00 * (p.b - q.b) / h + (d10 * p.db + d11 * q.db) + h * (d20 * p.d2b + d21 * q.d2b);
}

ErmakovSolution solve_real(const FrequencySchedule& schedule, double t_max, double tol, double max_step) {
  const double w0 = schedule.initial();
  const double w0sq = w0 * w0;
  auto accel = [&](double t, double b) {
    const double w = schedule.after(t);
    return -w * w * b + w0sq / (b * b * b);
  };
  return integrate(accel, TimeDomain::real, t_max, tol, max_step, std::max(w0, schedule.after(0.0)));
}

ErmakovSolution solve_euclidean(const ModeQuench& mode, double beta_max, double tol, double max_step) {
  mode.validate();
  if (auto bs = downward_beta_star(mode); bs && beta_max >= *bs) {
    throw DomainError("beta_max " + fmt(beta_max) + " reaches the b = 0 crossing at beta* = " + fmt(*bs), *bs);
  }
  const double wf2 = mode.omega_f * mode.omega_f, wi2 = mode.omega_i * mode.omega_i;
  auto accel = [=](double, double b) { return wf2 * b - wi2 / (b * b * b); };
  return integrate(accel, TimeDomain::euclidean, beta_max, tol, max_step, std::max(mode.omega_i, mode.omega_f));
}

namespace {

const QuadratureRule& phase_rule() {
  static const QuadratureRule rule = gauss_legendre(8);
  return rule;
}

double segment_integral(const ErmakovSolution& sol, double omega_i, double a, double b) {
  const auto& rule = phase_rule();
  double acc = 0.0;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double bb = sol.b_at(mid + half * rule.nodes[k]);
    acc += rule.weights[k] * omega_i / (bb * bb);
  }
  return acc * half;
}

}  // namespace

std::vector<PhaseSample> gamma_phase(const ErmakovSolution& sol, double omega_i) {
  const auto& s = sol.samples();
  std::vector<PhaseSample> out;
  out.reserve(s.size());
  double g = 0.0;
  out.push_back({s.front().t, 0.0});
  for (std::size_t i = 1; i < s.size(); ++i) {
    g += segment_integral(sol, omega_i, s[i - 1].t, s[i].t);
    out.push_back({s[i].t, g});
  }
  return out;
}

double gamma_at(const ErmakovSolution& sol, double omega_i, double t) {
  const auto& s = sol.samples();
  if (t < 0.0 || t > sol.t_max()) throw DomainError("t = " + fmt(t) + " lies outside the solution range");
  double g = 0.0;
  std::size_t i = 1;
  for (; i < s.size() && s[i].t <= t; ++i) g += segment_integral(sol, omega_i, s[i - 1].t, s[i].t);
  if (i < s.size() && t > s[i - 1].t) g += segment_integral(sol, omega_i, s[i - 1].t, t);
  return g;
}

double ermakov_energy(const FrequencySchedule& schedule, const ErmakovSample& s) {
  const double w0 = schedule.initial();
  const double w = schedule.at(s.t);
  return w0 * w0 / (s.b * s.b) + s.db * s.db + w * w * s.b * s.b;
}

}  // namespace quench
