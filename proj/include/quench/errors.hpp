#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace quench {

// Invalid physical input. Carries the downward-quench threshold when relevant.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what, std::optional<double> beta_star = std::nullopt)
      : std::domain_error(what), beta_star_(beta_star) {}
  std::optional<double> beta_star() const noexcept { return beta_star_; }

 private:
  std::optional<double> beta_star_;
};

// Real-time kernel evaluated at a focal point of the oscillator.
class CausticError : public DomainError {
 public:
  CausticError(const std::string& what, double nearest_caustic)
      : DomainError(what), nearest_(nearest_caustic) {}
  double nearest_caustic() const noexcept { return nearest_; }

 private:
  double nearest_;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StepSizeError : public NumericalError {
 public:
  StepSizeError(const std::string& what, double t) : NumericalError(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

class BracketError : public NumericalError {
 public:
  BracketError(const std::string& what, double lo, double hi)
      : NumericalError(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_, hi_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace quench
