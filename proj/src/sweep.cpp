#include "quench/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "quench/errors.hpp"
#include "quench/kernel.hpp"
#include "quench/negativity.hpp"
#include "quench/spectra.hpp"

namespace quench {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// ---------------------------------------------------------------- configuration

Observable Observable::parse(const std::string& text) {
  static const std::map<std::string, Kind> plain = {{"purity", Kind::purity},
                                                    {"von_neumann", Kind::von_neumann},
                                                    {"mutual_info", Kind::mutual_info},
                                                    {"negativity", Kind::negativity},
                                                    {"tc", Kind::tc}};
  Observable o;
  o.name = text;
  if (auto it = plain.find(text); it != plain.end()) {
    o.kind = it->second;
    return o;
  }
  const std::string prefix = "renyi:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string arg = text.substr(prefix.size());
    char* end = nullptr;
    const double a = std::strtod(arg.c_str(), &end);
    if (arg.empty() || end != arg.c_str() + arg.size() || !(a > 0.0) || !std::isfinite(a)) {
      throw ConfigError("observable '" + text + "': Renyi order must be a positive number");
    }
    o.kind = Kind::renyi;
    o.alpha = a;
    return o;
  }
  throw ConfigError("unknown observable '" + text + "'");
}

namespace {

double number_at(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError("missing key '" + where + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError("key '" + where + key + "' must be a number");
  return v.get<double>();
}

int integer_at(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError("key '" + key + "' must be an integer");
  return v.get<int>();
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError("unknown key '" + where + it.key() + "'");
  }
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

SweepConfig SweepConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"quench", "T_min", "T_max", "T_points", "scale", "observables", "threads"}, "");
  SweepConfig c;

  if (!j.contains("quench") || !j.at("quench").is_object()) throw ConfigError("missing object 'quench'");
  const auto& q = j.at("quench");
  reject_unknown(q, {"k0_i", "k0_f", "J_i", "J_f"}, "quench.");
  c.quench.k0_i = number_at(q, "k0_i", "quench.");
  c.quench.k0_f = number_at(q, "k0_f", "quench.");
  c.quench.J_i = number_at(q, "J_i", "quench.");
  c.quench.J_f = number_at(q, "J_f", "quench.");

  c.T_min = number_at(j, "T_min", "");
  c.T_max = number_at(j, "T_max", "");
  if (!j.contains("T_points")) throw ConfigError("missing key 'T_points'");
  c.T_points = integer_at(j, "T_points");
  if (j.contains("scale")) {
    if (!j.at("scale").is_string()) throw ConfigError("key 'scale' must be \"linear\" or \"log\"");
    const auto s = j.at("scale").get<std::string>();
    if (s == "linear") {
      c.scale = GridScale::linear;
    } else if (s == "log") {
      c.scale = GridScale::log;
    } else {
      throw ConfigError("key 'scale' must be \"linear\" or \"log\", got \"" + s + "\"");
    }
  }
  if (!j.contains("observables") || !j.at("observables").is_array()) {
    throw ConfigError("missing array 'observables'");
  }
  std::set<std::string> seen;
  for (const auto& o : j.at("observables")) {
    if (!o.is_string()) throw ConfigError("entries of 'observables' must be strings");
    const auto name = o.get<std::string>();
    if (!seen.insert(name).second) throw ConfigError("duplicate observable '" + name + "'");
    c.observables.push_back(Observable::parse(name));
  }
  if (j.contains("threads")) {
    c.threads = integer_at(j, "threads");
    if (c.threads < 0) throw ConfigError("key 'threads' must be non-negative");
  }

  if (!(c.T_min > 0.0) || !(c.T_max > c.T_min) || !std::isfinite(c.T_max)) {
    throw ConfigError("temperatures must satisfy 0 < T_min < T_max");
  }
  if (c.T_points < 2) throw ConfigError("T_points must be at least 2");
  if (c.observables.empty()) throw ConfigError("observables must not be empty");
  try {
    c.quench.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid quench: ") + e.what());
  }
  return c;
}

SweepConfig SweepConfig::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError("JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                      e.what());
  }
  return from_json(j);
}

SweepConfig SweepConfig::load(const std::string& path) { return parse(read_file(path)); }

json SweepConfig::echo() const {
  json obs = json::array();
  for (const auto& o : observables) obs.push_back(o.name);
  return {{"quench", {{"k0_i", quench.k0_i}, {"k0_f", quench.k0_f}, {"J_i", quench.J_i}, {"J_f", quench.J_f}}},
          {"T_min", T_min},
          {"T_max", T_max},
          {"T_points", T_points},
          {"scale", scale == GridScale::log ? "log" : "linear"},
          {"observables", obs}};
}

std::vector<double> temperature_grid(double t_min, double t_max, int points, GridScale scale) {
  std::vector<double> ts(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    ts[i] = scale == GridScale::log ? t_min * std::pow(t_max / t_min, f) : t_min + (t_max - t_min) * f;
  }
  ts.front() = t_min;
  ts.back() = t_max;
  return ts;
}

std::vector<double> SweepConfig::temperatures() const { return temperature_grid(T_min, T_max, T_points, scale); }

// ---------------------------------------------------------------- sweep

namespace {

void add_flag(SweepRow& row, const std::string& f) {
  if (std::find(row.flags.begin(), row.flags.end(), f) == row.flags.end()) row.flags.push_back(f);
}

SweepRow evaluate_row(const SweepConfig& cfg, double T, const std::optional<double>& tc, bool tc_failed) {
  SweepRow row;
  row.T = T;
  row.beta = 1.0 / T;
  row.values.assign(cfg.observables.size(), std::nullopt);
  const auto [m1, m2] = normal_modes(cfg.quench);

  std::optional<ModeThermo> mt1, mt2;
  try {
    mt1 = mode_thermo(m1, row.beta);
    mt2 = mode_thermo(m2, row.beta);
  } catch (const DomainError&) {
    add_flag(row, "domain_error");
  }

  for (std::size_t k = 0; k < cfg.observables.size(); ++k) {
    const auto& o = cfg.observables[k];
    if (o.kind == Observable::Kind::tc) {
      row.values[k] = tc;
      if (tc_failed) add_flag(row, "tc_unavailable");
      continue;
    }
    if (!mt1 || !mt2) continue;
    try {
      switch (o.kind) {
        case Observable::Kind::purity:
          row.values[k] = std::sqrt(mt1->a_minus * mt2->a_minus / (mt1->a_plus * mt2->a_plus));
          break;
        case Observable::Kind::renyi:
          row.values[k] = renyi_entropy(mt1->xi, o.alpha) + renyi_entropy(mt2->xi, o.alpha);
          break;
        case Observable::Kind::von_neumann:
          row.values[k] = von_neumann_entropy(mt1->xi) + von_neumann_entropy(mt2->xi);
          break;
        case Observable::Kind::mutual_info: {
          const auto sub = substate_ratio(thermal_rho_coupled(*mt1, *mt2));
          if (sub.sign_flipped) add_flag(row, "substate_sign");
          row.values[k] =
              2.0 * von_neumann_entropy(sub.zeta) - (von_neumann_entropy(mt1->xi) + von_neumann_entropy(mt2->xi));
          break;
        }
        case Observable::Kind::negativity: {
          const auto p = negativity_at(cfg.quench, row.beta);
          if (p.clamped) add_flag(row, "clamped_discriminant");
          if (p.n.saturated) add_flag(row, "saturated");
          row.values[k] = p.n.value;
          break;
        }
        case Observable::Kind::tc:
          break;
      }
    } catch (const DomainError&) {
      add_flag(row, "domain_error");
      row.values[k] = std::nullopt;
    }
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, int threads_override) {
  const int threads = threads_override >= 0 ? threads_override : cfg.threads;
  const auto ts = cfg.temperatures();

  std::optional<double> tc;
  bool tc_failed = false;
  const bool want_tc = std::any_of(cfg.observables.begin(), cfg.observables.end(),
                                   [](const Observable& o) { return o.kind == Observable::Kind::tc; });
  if (want_tc) {
    try {
      tc = vanishing_temperature(cfg.quench);
    } catch (const DomainError&) {
      tc_failed = true;
    } catch (const BracketError&) {
      tc_failed = true;
    }
  }

  SweepResult r;
  r.columns = {"T", "beta"};
  for (const auto& o : cfg.observables) r.columns.push_back(o.name);
  r.columns.push_back("flags");
  r.provenance = {kVersion, std::string("A-convention: ") + kAConvention, "config: " + cfg.echo().dump(),
                  std::string("T-grid: ") + (cfg.scale == GridScale::log ? "log" : "linear") +
                      ", endpoints inclusive"};
  std::function<SweepRow(std::size_t)> fn = [&](std::size_t i) { return evaluate_row(cfg, ts[i], tc, tc_failed); };
  r.rows = ordered_parallel_map<SweepRow>(ts.size(), threads, fn);
  return r;
}

void SweepResult::write_csv(std::ostream& out) const {
  for (const auto& p : provenance) out << "# " << p << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    out << format_number(row.T) << ',' << format_number(row.beta);
    for (const auto& v : row.values) out << ',' << (v ? format_number(*v) : "");
    out << ',';
    for (std::size_t i = 0; i < row.flags.size(); ++i) out << (i ? ";" : "") << row.flags[i];
    out << '\n';
  }
}

std::string SweepResult::to_csv() const {
  std::ostringstream ss;
  write_csv(ss);
  return ss.str();
}

bool SweepResult::all_rows_failed() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) {
           return std::all_of(r.values.begin(), r.values.end(), [](const auto& v) { return !v.has_value(); });
         });
}

// ---------------------------------------------------------------- validation

ValidationReport validate_config_text(const std::string& text) {
  ValidationReport rep;
  SweepConfig cfg;
  try {
    cfg = SweepConfig::parse(text);
  } catch (const ConfigError& e) {
    rep.ok = false;
    rep.errors.emplace_back(e.what());
    return rep;
  }
  const auto [m1, m2] = normal_modes(cfg.quench);
  char buf[256];
  std::snprintf(buf, sizeof buf, "mode 1: omega_i = %.12g, omega_f = %.12g", m1.omega_i, m1.omega_f);
  rep.info.emplace_back(buf);
  std::snprintf(buf, sizeof buf, "mode 2: omega_i = %.12g, omega_f = %.12g", m2.omega_i, m2.omega_f);
  rep.info.emplace_back(buf);
  int idx = 1;
  for (const auto& m : {m1, m2}) {
    if (auto bs = downward_beta_star(m)) {
      std::snprintf(buf, sizeof buf,
                    "mode %d is a downward quench: beta* = %.12g (T* = %.12g); rows with T <= T* are flagged", idx,
                    *bs, 1.0 / *bs);
      rep.warnings.emplace_back(buf);
    }
    ++idx;
  }
  return rep;
}

ValidationReport validate_config(const std::string& path) {
  std::string text;
  try {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  } catch (const ConfigError& e) {
    ValidationReport rep;
    rep.ok = false;
    rep.errors.emplace_back(e.what());
    return rep;
  }
  return validate_config_text(text);
}

// ---------------------------------------------------------------- figures

namespace {

constexpr double kFigTMin = 0.05, kFigTMax = 20.0;
constexpr int kFigPoints = 400;

std::string grid_note() {
  return "T-grid: log, 400 points on [0.05, 20], endpoints inclusive (figure axes carry no stated range)";
}

std::string curve_csv(const std::vector<std::string>& provenance, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream ss;
  ss << "# " << kVersion << '\n' << "# A-convention: " << kAConvention << '\n';
  for (const auto& p : provenance) ss << "# " << p << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) ss << (i ? "," : "") << columns[i];
  ss << '\n';
  for (const auto& r : rows) {
    // Absent values (NaN) are written as empty fields.
    for (std::size_t i = 0; i < r.size(); ++i) ss << (i ? "," : "") << (std::isnan(r[i]) ? "" : format_number(r[i]));
    ss << '\n';
  }
  return ss.str();
}

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  std::string s = buf;
  std::replace(s.begin(), s.end(), '.', 'p');
  std::replace(s.begin(), s.end(), '-', 'm');
  return s;
}

std::vector<CurveFile> single_oscillator(const std::string& name, bool entropy, int threads) {
  const auto ts = temperature_grid(kFigTMin, kFigTMax, kFigPoints, GridScale::log);
  std::vector<CurveFile> files;
  for (double w : {3.0, 5.0, 7.0}) {
    const ModeQuench mode{3.0, w};
    std::function<std::vector<double>(std::size_t)> fn = [&](std::size_t i) {
      const auto mt = mode_thermo(mode, 1.0 / ts[i]);
      return std::vector<double>{ts[i], 1.0 / ts[i], entropy ? von_neumann_entropy(mt.xi) : purity_single(mt)};
    };
    const auto rows = ordered_parallel_map<std::vector<double>>(ts.size(), threads, fn);
    files.push_back({name + "_omega" + tag(w) + ".csv",
                     curve_csv({"figure " + name + ": omega_i = 3, omega_f = " + format_number(w), grid_note()},
                               {"T", "beta", entropy ? "S_von" : "P0"}, rows)});
  }
  return files;
}

std::vector<CurveFile> coupled_family(const std::string& name, const std::string& column, int threads) {
  const auto ts = temperature_grid(kFigTMin, kFigTMax, kFigPoints, GridScale::log);
  std::vector<CurveFile> files;
  for (double kf : {3.0, 6.0, 9.0}) {
    const QuenchSpec spec{3.0, kf, 3.0, kf};
    const auto [m1, m2] = normal_modes(spec);
    std::function<std::vector<double>(std::size_t)> fn = [&](std::size_t i) {
      const double beta = 1.0 / ts[i];
      const auto mt1 = mode_thermo(m1, beta), mt2 = mode_thermo(m2, beta);
      double v = 0.0;
      if (column == "P") {
        v = std::sqrt(mt1.a_minus * mt2.a_minus / (mt1.a_plus * mt2.a_plus));
      } else if (column == "S_von") {
        v = von_neumann_entropy(mt1.xi) + von_neumann_entropy(mt2.xi);
      } else {
        v = mutual_information(thermal_rho_coupled(mt1, mt2));
      }
      return std::vector<double>{ts[i], beta, v};
    };
    const auto rows = ordered_parallel_map<std::vector<double>>(ts.size(), threads, fn);
    files.push_back({name + "_k0f" + tag(kf) + "_Jf" + tag(kf) + ".csv",
                     curve_csv({"figure " + name + ": k0_i = J_i = 3, k0_f = J_f = " + format_number(kf), grid_note()},
                               {"T", "beta", column}, rows)});
  }
  return files;
}

std::vector<CurveFile> negativity_family(const std::string& name, const std::vector<double>& js, int threads) {
  const auto ts = temperature_grid(kFigTMin, kFigTMax, kFigPoints, GridScale::log);
  std::vector<CurveFile> files;
  for (double J : js) {
    const QuenchSpec spec{1.0, 1.0, J, J};
    std::function<std::vector<double>(std::size_t)> fn = [&](std::size_t i) {
      return std::vector<double>{ts[i], 1.0 / ts[i], negativity_at(spec, 1.0 / ts[i]).n.value};
    };
    const auto rows = ordered_parallel_map<std::vector<double>>(ts.size(), threads, fn);
    const auto [m1, m2] = normal_modes(spec);
    const auto tc = critical_temperature(m1.omega_f, m2.omega_f);
    files.push_back({name + "_J" + tag(J) + ".csv",
                     curve_csv({"figure " + name + ": k0 = 1, J = " + format_number(J),
                                "tc_exact = " + format_number(tc.tc_exact) + ", tc_approx = " +
                                    format_number(tc.tc_approx),
                                grid_note()},
                               {"T", "beta", "N"}, rows)});
  }
  return files;
}

std::vector<CurveFile> zero_temperature_family(const std::string& name, const std::vector<QuenchSpec>& specs,
                                               const std::string& label, int threads) {
  const auto ts = temperature_grid(kFigTMin, kFigTMax, kFigPoints, GridScale::log);
  std::vector<CurveFile> files;
  for (const auto& spec : specs) {
    const auto lim = negativity_zero_temperature(spec, 1.0 / kFigTMin);
    std::function<std::vector<double>(std::size_t)> fn = [&](std::size_t i) {
      const double n = negativity_at(spec, 1.0 / ts[i]).n.value;
      return std::vector<double>{ts[i], 1.0 / ts[i], n, n / lim.value};
    };
    const auto rows = ordered_parallel_map<std::vector<double>>(ts.size(), threads, fn);
    const double varied = label == "k0f" ? spec.k0_f : spec.J_f;
    const std::string params = "k0_i = " + format_number(spec.k0_i) + ", k0_f = " + format_number(spec.k0_f) +
                               ", J_i = " + format_number(spec.J_i) + ", J_f = " + format_number(spec.J_f);
    files.push_back(
        {name + "_" + label + tag(varied) + ".csv",
         curve_csv({"figure " + name + ": " + params,
                    "N(inf) = " + format_number(lim.value) + " taken as the large-beta limit at beta = " +
                        format_number(lim.beta) + (lim.converged ? " (|dN/N| < 1e-4)" : " (NOT converged)"),
                    "vanishing temperature = " + format_number(vanishing_temperature(spec)), grid_note()},
                   {"T", "beta", "N", "N_over_N_inf"}, rows)});
  }
  return files;
}

std::vector<CurveFile> separability_region() {
  std::vector<std::vector<double>> boundary;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const double x = 0.05 + (5.0 - 0.05) * i / (n - 1);
    const double upper = x * boundary_g(x);
    // The lower branch mirrors the upper one and exists only where x tanh x >= 1.
    double lower = std::nan("");
    if (x * std::tanh(x) >= 1.0) {
      const double target = x * std::tanh(x);
      double lo = 1e-12, hi = target;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mid / std::tanh(mid) < target ? lo : hi) = mid;
      }
      lower = 0.5 * (lo + hi);
    }
    boundary.push_back({x, upper, lower, x / std::tanh(x)});
  }
  std::vector<std::vector<double>> mask;
  const int m = 120;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      const double x = 3.0 * i / m, y = 3.0 * j / m;
      const bool sep = x * std::tanh(x) - y / std::tanh(y) <= 0.0 && x / std::tanh(x) - y * std::tanh(y) >= 0.0;
      mask.push_back({x, y, sep ? 1.0 : 0.0});
    }
  }
  return {{"fig4a_boundary.csv",
           curve_csv({"figure fig4a: separability boundary in the (x, y) = (w1 beta/2, w2 beta/2) plane",
                      "y_upper solves y tanh y = x coth x; y_lower solves y coth y = x tanh x; y_dashed = x coth x"},
                     {"x", "y_upper", "y_lower", "y_dashed"}, boundary)},
          {"fig4a_region.csv",
           curve_csv({"figure fig4a: separable-region mask on a 120 x 120 grid over (0, 3]^2"}, {"x", "y", "separable"},
                     mask)}};
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig1a", "fig1b", "fig2a", "fig2b", "fig2c", "fig3a",
                                                 "fig3b", "fig4a", "fig4b", "fig5a", "fig5b"};
  return names;
}

std::string tc_table_csv(double k0, double j_min, double j_max, int points) {
  if (points < 2) throw ConfigError("points must be at least 2");
  if (!(j_max > j_min)) throw ConfigError("j-max must exceed j-min");
  if (!(k0 > 0.0) || k0 + 2.0 * j_min <= 0.0) throw DomainError("k0 + 2 J must stay positive over the J range");
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < points; ++i) {
    const double J = j_min + (j_max - j_min) * i / (points - 1);
    const auto c = critical_temperature(std::sqrt(k0), std::sqrt(k0 + 2.0 * J));
    rows.push_back({J, c.tc_exact, c.tc_approx});
  }
  return curve_csv({"critical temperature at k0 = " + format_number(k0)}, {"J", "tc_exact", "tc_approx"}, rows);
}

std::vector<CurveFile> figure_preset(const std::string& name, int threads) {
  if (name == "fig1a") return single_oscillator(name, false, threads);
  if (name == "fig1b") return single_oscillator(name, true, threads);
  if (name == "fig2a") return coupled_family(name, "P", threads);
  if (name == "fig2b") return coupled_family(name, "S_von", threads);
  if (name == "fig2c") return coupled_family(name, "I", threads);
  if (name == "fig3a") return negativity_family(name, {1.0, 5.0, 10.0}, threads);
  if (name == "fig3b") return negativity_family(name, {-0.45, -0.35, -0.2}, threads);
  if (name == "fig4a") return separability_region();
  if (name == "fig4b") return {{"fig4b_tc.csv", tc_table_csv(1.0, -0.45, 10.0, 200)}};
  if (name == "fig5a") {
    return zero_temperature_family(name, {{1, 1, 5, 5}, {1, 20, 5, 5}, {1, 40, 5, 5}}, "k0f", threads);
  }
  if (name == "fig5b") {
    return zero_temperature_family(name, {{1, 1, 5, 5}, {1, 1, 5, 25}, {1, 1, 5, 45}}, "Jf", threads);
  }
  throw ConfigError("unknown figure preset '" + name + "'");
}

}  // namespace quench
