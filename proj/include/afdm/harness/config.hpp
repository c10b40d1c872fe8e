// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "afdm/estimator.hpp"

namespace afdm::harness {

struct ExperimentConfig {
  int n = 256;
  int k_max = 3;
  int l_max = 3;
  int n_cp = 8;
  double c2 = 1.4142135623730951;
  std::vector<int> c_list{8};
  std::vector<double> snr_db_list{0, 5, 10, 15, 20, 25, 30};
  std::vector<double> ep_ei_db_list{10};
  int trials_per_point = 200;
  int estimates_per_trial = 10;
  bool average_estimates = true;
  std::vector<std::string> estimators{"proposed", "integer-only", "two-d-search"};
  std::uint64_t master_seed = 1;
  int fir_half_width = 16;
  int oracle_oversampling = 16;
  int validate_draws = 100;
  int validate_channels = 50;
  int threads = 0;  ///< 0 picks the hardware concurrency
  SearchConfig search;
  std::string output;  ///< file stem; empty writes CSV to stdout

  /// Throws InvalidParameter on empty lists, unknown estimators, C < 2 k_max,
  /// trials < 1 or estimates < 1.
  void validate() const;
  /// Grid for one entry of c_list.
  AfdmGrid grid(int segments) const;
};

/// Keys accepted by apply_setting, one per field.
const std::vector<std::string>& config_keys();

/// Sets one field from text. Lists are comma separated. Throws
/// InvalidParameter on an unknown key or a malformed value.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat `key = value` lines; `#` starts a comment.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

}  // namespace afdm::harness
