// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "afdm/channel.hpp"
#include "afdm/harness/config.hpp"

namespace afdm::harness {

/// splitmix64 finalizer; derives independent stream seeds from (seed, tags...).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

struct SweepPoint {
  int segments = 8;
  double snr_db = 0.0;
  double ep_ei_db = 0.0;
  int index = 0;  ///< position in the sweep; feeds the noise and data seeds
};

struct EstimatorOutcome {
  std::string name;
  double delay = 0.0;     ///< averaged over the trial's frames when enabled
  double doppler = 0.0;
  double pspr = 0.0;
  double delay_error = 0.0;
  double doppler_error = 0.0;  ///< circular: smallest of e, e - 1, e + 1 in magnitude
  int flagged = 0;
  double elapsed_ms = 0.0;
};

struct TrialResult {
  LosChannel truth;
  std::vector<EstimatorOutcome> outcomes;  ///< in cfg.estimators order
};

/// Per-trial context shared read-only across workers.
struct PointContext {
  AfdmGrid grid;
  ElgTable table;
};
PointContext make_context(const ExperimentConfig& cfg, int segments);

/// Draws L ~ U[0, l_max], K ~ U[-k_max, k_max] and a unit-modulus gain from
/// (master_seed, trial_index) only, so every sweep point sees the same channels.
LosChannel draw_channel(const ExperimentConfig& cfg, std::uint64_t trial_index);

/// Nominal frame power (|pilot|^2 + data count) / N.
double frame_power(const AfdmGrid& g, const PilotLayout& layout);

TrialResult run_trial(const ExperimentConfig& cfg, const PointContext& ctx, const SweepPoint& point,
                      std::uint64_t trial_index);

/// Circular Doppler error.
double circular_error(double e);

struct RmseRow {
  std::string estimator;
  double snr_db = 0.0;
  double ep_ei_db = 0.0;
  int segments = 0;
  double delay_rmse = 0.0;
  double doppler_rmse = 0.0;
  int trials = 0;
  double mean_pspr = 0.0;
  double wall_ms = 0.0;
  double delay_stderr = 0.0;    ///< standard error of delay_rmse
  double doppler_stderr = 0.0;
  int flagged = 0;
};

struct RmseReport {
  std::vector<RmseRow> rows;
};

/// Every (C, E_p/E_i, SNR) point in config order, trials spread over a worker
/// pool and reduced in trial order.
RmseReport run_sweep(const ExperimentConfig& cfg);

}  // namespace afdm::harness
