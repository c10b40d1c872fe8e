// SPDX-License-Identifier: Apache-2.0
// afdm: Monte Carlo sweeps, model validation and profile dumps.

#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "afdm/harness/config.hpp"
#include "afdm/harness/experiment.hpp"
#include "afdm/harness/report.hpp"
#include "afdm/harness/validate.hpp"
#include "afdm/simd/kernels.hpp"

namespace {

using afdm::harness::ExperimentConfig;

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_config_options(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("-c,--config", ov.config_path, "flat key = value config file");
  for (const auto& key : afdm::harness::config_keys()) {
    cmd->add_option_function<std::string>(
        "--" + key, [&ov, key](const std::string& v) { ov.values[key] = v; }, "override " + key);
  }
}

ExperimentConfig resolve(const Overrides& ov) {
  ExperimentConfig cfg;
  if (!ov.config_path.empty()) cfg = afdm::harness::load_config(ov.config_path, cfg);
  for (const auto& [k, v] : ov.values) afdm::harness::apply_setting(cfg, k, v);
  return cfg;
}

int run_sweep(const Overrides& ov) {
  const ExperimentConfig cfg = resolve(ov);
  const auto report = afdm::harness::run_sweep(cfg);
  if (cfg.output.empty()) {
    afdm::harness::write_csv(std::cout, report);
    return 0;
  }
  std::ofstream csv(cfg.output + ".csv");
  std::ofstream json(cfg.output + ".json");
  if (!csv || !json) {
    std::cerr << "cannot write " << cfg.output << ".{csv,json}\n";
    return 2;
  }
  afdm::harness::write_csv(csv, report);
  afdm::harness::write_json(json, report, cfg);
  std::cerr << "wrote " << cfg.output << ".csv and " << cfg.output << ".json\n";
  return 0;
}

int run_validate(const Overrides& ov) {
  const auto report = afdm::harness::validate_mode(resolve(ov));
  afdm::harness::write_validation(std::cout, report);
  return report.passed() ? 0 : 1;
}

struct ProfileArgs {
  int segments = 8;
  int l = 1;
  double iota = 0.3;
  int k = 2;
  double kappa = 0.4;
  int m_prime = 0;
  bool elg = false;
};

int run_profile(const Overrides& ov, const ProfileArgs& pa) {
  const ExperimentConfig cfg = resolve(ov);
  const afdm::AfdmGrid g = cfg.grid(pa.segments);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    out = &file;
  }
  if (pa.elg) {
    afdm::harness::write_elg_csv(*out, afdm::elg_curve(g));
  } else {
    afdm::harness::write_profile_csv(*out, g, {pa.l, pa.iota, pa.k, pa.kappa}, pa.m_prime);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AFDM fractional delay/Doppler estimation harness"};
  app.require_subcommand(1);
  bool show_backend = false;
  app.add_flag("--backend", show_backend, "print the active SIMD backend to stderr");

  Overrides sweep_ov, validate_ov, profile_ov;
  auto* sweep = app.add_subcommand("sweep", "RMSE versus SNR sweep");
  add_config_options(sweep, sweep_ov);
  auto* validate = app.add_subcommand("validate", "envelope and channel-model checks");
  add_config_options(validate, validate_ov);
  auto* profile = app.add_subcommand("profile-dump", "exact and envelope magnitude profiles as CSV");
  add_config_options(profile, profile_ov);
  ProfileArgs pa;
  profile->add_option("--C", pa.segments, "chirp segment count");
  profile->add_option("--l", pa.l, "integer delay");
  profile->add_option("--iota", pa.iota, "fractional delay");
  profile->add_option("--k", pa.k, "integer Doppler");
  profile->add_option("--kappa", pa.kappa, "fractional Doppler");
  profile->add_option("--m-prime", pa.m_prime, "transmit column");
  profile->add_flag("--elg", pa.elg, "dump the early-late gate table instead");

  CLI11_PARSE(app, argc, argv);
  if (show_backend) {
    std::cerr << "simd backend: " << afdm::simd::active().name << '\n';
  }
  try {
    if (*sweep) return run_sweep(sweep_ov);
    if (*validate) return run_validate(validate_ov);
    if (*profile) return run_profile(profile_ov, pa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
