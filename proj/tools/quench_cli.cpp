#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "quench/errors.hpp"
#include "quench/sweep.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kDomain = 2, kNumerical = 3 };

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw quench::ConfigError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw quench::ConfigError("write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal observables of coupled oscillators after a sudden frequency quench"};
  app.set_version_flag("--version", std::string(quench::kVersion));
  app.require_subcommand(1);
  int threads = -1;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);

  std::string config, out, out_dir, name;
  auto* sweep = app.add_subcommand("sweep", "Evaluate observables on a temperature grid");
  sweep->add_option("--config", config, "JSON sweep configuration")->required();
  sweep->add_option("--out", out, "Output CSV (stdout when omitted)");

  auto* figure = app.add_subcommand("figure", "Write the curves of a figure preset");
  figure->add_option("name", name, "Preset name")->required()->check(CLI::IsMember(quench::figure_names()));
  figure->add_option("--out-dir", out_dir, "Output directory")->required();

  double k0 = 1.0, j_min = 0.0, j_max = 0.0;
  int points = 0;
  auto* tc = app.add_subcommand("tc", "Tabulate exact and approximate critical temperatures against J");
  tc->add_option("--k0", k0)->required();
  tc->add_option("--j-min", j_min)->required();
  tc->add_option("--j-max", j_max)->required();
  tc->add_option("--points", points)->required();
  tc->add_option("--out", out, "Output CSV (stdout when omitted)");

  auto* validate = app.add_subcommand("validate", "Check a sweep configuration");
  validate->add_option("--config", config, "JSON sweep configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*sweep) {
      const auto cfg = quench::SweepConfig::load(config);
      const auto result = quench::run_sweep(cfg, threads);
      if (out.empty()) {
        result.write_csv(std::cout);
      } else {
        write_text(out, result.to_csv());
      }
      if (result.all_rows_failed()) {
        std::cerr << "error: every grid point failed the domain check\n";
        return kDomain;
      }
    } else if (*figure) {
      std::filesystem::create_directories(out_dir);
      for (const auto& f : quench::figure_preset(name, threads < 0 ? 0 : threads)) {
        const auto path = (std::filesystem::path(out_dir) / f.filename).string();
        write_text(path, f.content);
        std::cout << path << '\n';
      }
    } else if (*tc) {
      const auto csv = quench::tc_table_csv(k0, j_min, j_max, points);
      if (out.empty()) {
        std::cout << csv;
      } else {
        write_text(out, csv);
      }
    } else if (*validate) {
      const auto rep = quench::validate_config(config);
      for (const auto& e : rep.errors) std::cerr << "error: " << e << '\n';
      for (const auto& w : rep.warnings) std::cout << "warning: " << w << '\n';
      for (const auto& i : rep.info) std::cout << i << '\n';
      if (!rep.ok) return kConfig;
      std::cout << "ok\n";
    }
  } catch (const quench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const quench::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
