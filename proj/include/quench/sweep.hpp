#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "quench/core.hpp"

namespace quench {

inline constexpr const char* kVersion = "quench-thermo 1.0.0";
inline constexpr const char* kAConvention = "A = (wf^2 - wi^2) sinh(2 wf beta) / (4 wf b^2)";

enum class GridScale { linear, log };

struct Observable {
  enum class Kind { purity, renyi, von_neumann, mutual_info, negativity, tc };
  Kind kind = Kind::purity;
  double alpha = 0.0;
  std::string name;

  static Observable parse(const std::string& text);
};

struct SweepConfig {
  QuenchSpec quench;
  double T_min = 0.0;
  double T_max = 0.0;
  int T_points = 0;
  GridScale scale = GridScale::linear;
  std::vector<Observable> observables;
  int threads = 0;

  // Throws ConfigError on unknown keys, wrong types or violated invariants.
  static SweepConfig from_json(const nlohmann::json& j);
  static SweepConfig parse(const std::string& text);
  static SweepConfig load(const std::string& path);
  // Everything except the worker count, which must not influence the output.
  nlohmann::json echo() const;
  std::vector<double> temperatures() const;
};

std::vector<double> temperature_grid(double t_min, double t_max, int points, GridScale scale);

struct SweepRow {
  double T = 0.0;
  double beta = 0.0;
  std::vector<std::optional<double>> values;
  std::vector<std::string> flags;
};

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
  std::vector<std::string> provenance;

  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
  bool all_rows_failed() const;
};

SweepResult run_sweep(const SweepConfig& cfg, int threads_override = -1);

int resolve_threads(int requested);

// Evaluates fn(i) for i in [0, n) on a worker pool and returns results in index order.
template <class T>
std::vector<T> ordered_parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int w = std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(n)));
  if (w == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  std::vector<std::string> info;
};

ValidationReport validate_config_text(const std::string& text);
ValidationReport validate_config(const std::string& path);

struct CurveFile {
  std::string filename;
  std::string content;
};

const std::vector<std::string>& figure_names();
std::vector<CurveFile> figure_preset(const std::string& name, int threads = 0);

// Columns J, tc_exact, tc_approx at fixed k0.
std::string tc_table_csv(double k0, double j_min, double j_max, int points);

std::string format_number(double v);

}  // namespace quench
