#include <exception>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "logse/harness/config.hpp"
#include "logse/harness/io.hpp"
#include "logse/harness/presets.hpp"
#include "logse/harness/study.hpp"

namespace h = logse::harness;

namespace {

void print_summary(const h::StudyReport& r) {
  std::cout << "study: " << h::to_string(r.config.kind) << " (" << r.runs.size() << " runs, "
            << std::setprecision(3) << r.wall_seconds << " s)\n";
  for (const auto& f : r.fits) {
    std::cout << "  " << h::to_string(f.method) << ' ' << logse::to_string(f.norm)
              << " slope = " << std::setprecision(4) << f.fit.slope
              << " (residual " << std::setprecision(2) << f.fit.residual << ", "
              << f.fit.points_used << '/' << f.fit.points_total << " points)\n";
  }
  for (const auto& run : r.runs) {
    if (r.config.kind == h::StudyKind::LongTime) {
      std::cout << "  mass drift " << std::setprecision(3) << run.mass_drift << ", energy drift "
                << run.energy_drift << '\n';
    }
  }
  for (const auto& n : r.notes) std::cout << "  note: " << n << '\n';
  for (const auto& f : r.files_written) std::cout << "  wrote " << f << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver workbench for the regularized logarithmic Schroedinger equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> output;
  std::optional<unsigned> workers;
  auto* run = app.add_subcommand("run", "Execute the study described by a config file");
  run->add_option("config", config_path, "Study config (INI)")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", output, "Override [study] output directory");
  run->add_option("-j,--workers", workers, "Override [study] workers")->check(CLI::PositiveNumber);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse and check a config file");
  validate->add_option("config", validate_path, "Study config (INI)")
      ->required()
      ->check(CLI::ExistingFile);
  bool echo = false;
  validate->add_flag("--echo", echo, "Print the canonical form of the parsed config");

  std::string preset_name;
  bool full = false;
  auto* presets = app.add_subcommand("presets", "List presets, or print one as a config file");
  presets->add_option("name", preset_name, "Preset to print");
  presets->add_flag("--full", full, "Full-size grids and horizons instead of desk scale");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = h::load_config(config_path);
      if (output) cfg.output = *output;
      if (workers) cfg.workers = *workers;
      cfg.validate();
      print_summary(h::run_study(cfg));
    } else if (*validate) {
      const auto cfg = h::load_config(validate_path);
      std::cout << validate_path << ": valid " << h::to_string(cfg.kind) << " study\n";
      if (echo) std::cout << h::to_config_text(cfg);
    } else if (*presets) {
      if (preset_name.empty()) {
        for (const auto& p : h::list_presets()) {
          std::cout << std::left << std::setw(20) << p.name << p.description << '\n';
        }
      } else {
        std::cout << h::preset_config(preset_name, full);
      }
    }
  } catch (const logse::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const h::StudyError& e) {
    std::cerr << "study failed: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
