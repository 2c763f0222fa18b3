// Command-line front end: kt sweeps, figure-series export, acceptance run.

#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qcorr/sweep.hpp"
#include "qcorr/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

qcorr::StateKind parse_state(const std::string& s) {
  return s == "ghz" ? qcorr::StateKind::Ghz : qcorr::StateKind::W;
}

qcorr::NoiseKind parse_noise(const std::string& s) {
  if (s == "x") return qcorr::NoiseKind::PauliX;
  if (s == "y") return qcorr::NoiseKind::PauliY;
  if (s == "z") return qcorr::NoiseKind::PauliZ;
  return qcorr::NoiseKind::Isotropic;
}

qcorr::Measure parse_measure(const std::string& s) {
  if (s == "mid") return qcorr::Measure::Mid;
  if (s == "amid") return qcorr::Measure::Amid;
  return qcorr::Measure::Both;
}

int run_sweep(qcorr::SweepConfig cfg) {
  const auto rows = qcorr::sweep(cfg);
  if (cfg.out.empty()) {
    qcorr::write_output(cfg, rows, std::cout);
  } else {
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) {
      std::cerr << "qcorr: cannot open " << cfg.out << " for writing\n";
      return kExitUsage;
    }
    qcorr::write_output(cfg, rows, os);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum correlation of three-qubit states under local noise"};
  app.require_subcommand(1);

  std::string state = "ghz", noise = "x", measure = "both", format = "csv";
  qcorr::SweepConfig cfg;
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate correlation measures over a kt grid");
  sweep_cmd->add_option("--state", state, "initial state")
      ->required()
      ->check(CLI::IsMember({"ghz", "w"}));
  sweep_cmd->add_option("--noise", noise, "noise channel")
      ->required()
      ->check(CLI::IsMember({"x", "y", "z", "iso"}));
  sweep_cmd->add_option("--measure", measure, "which measures to tabulate")
      ->check(CLI::IsMember({"mid", "amid", "both"}));
  sweep_cmd->add_option("--kt-min", cfg.kt_min, "grid start (dimensionless kappa*t)");
  sweep_cmd->add_option("--kt-max", cfg.kt_max, "grid end");
  sweep_cmd->add_option("--points", cfg.points, "grid size, endpoints included");
  sweep_cmd->add_option("--restarts", cfg.restarts, "optimizer restarts per grid point");
  sweep_cmd->add_option("--seed", cfg.seed, "base seed for the optimizer restarts");
  sweep_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--out", cfg.out, "output path (stdout when omitted)");

  int figure_id = 0;
  std::string figure_dir = ".";
  auto* figure_cmd = app.add_subcommand("figure", "export the series behind a shipped figure");
  figure_cmd->add_option("--id", figure_id, "figure number")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  figure_cmd->add_option("--out", figure_dir, "output directory");

  bool validate_json = false;
  auto* validate_cmd = app.add_subcommand("validate", "run the acceptance checks");
  validate_cmd->add_flag("--json", validate_json, "emit a machine-readable summary on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sweep_cmd->parsed()) {
      cfg.state = parse_state(state);
      cfg.noise = parse_noise(noise);
      cfg.measure = parse_measure(measure);
      cfg.format = format == "csv" ? qcorr::OutputFormat::Csv : qcorr::OutputFormat::Json;
      return run_sweep(cfg);
    }
    if (figure_cmd->parsed()) {
      const auto files = qcorr::figure(figure_id, figure_dir);
      for (const auto& f : files) std::cout << f.string() << '\n';
      return kExitOk;
    }
    // validate
    auto& log = validate_json ? std::cerr : std::cout;
    const auto report = qcorr::run_acceptance(log, argv[0]);
    if (validate_json) std::cout << qcorr::acceptance_json(report).dump(2) << std::endl;
    return report.all_passed() ? kExitOk : kExitValidationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qcorr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qcorr: " << e.what() << '\n';
    return kExitValidationFailure;
  }
}
