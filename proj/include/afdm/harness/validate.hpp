// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "afdm/harness/config.hpp"

namespace afdm::harness {

struct FidelityStats {
  int draws = 0;
  int peak_agree = 0;
  int corr_above = 0;  ///< draws with correlation above the threshold
  double corr_min = 1.0;
  double corr_mean = 0.0;
};

/// Envelope vs |exact F| over every row of the pilot column m' = 0, for random
/// (l <= l_max, iota, |k| <= k_max, kappa). Peak indices and the Pearson
/// correlation of the two magnitude profiles are recorded per draw.
FidelityStats envelope_fidelity(const AfdmGrid& g, int draws, std::uint64_t seed, double threshold = 0.99);

/// Pearson correlation.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Pooled relative RMS ||fir - oracle|| / ||oracle|| over `channels` random
/// fractional channels, FIR half width W and oracle oversampling O.
double fir_oracle_error(const AfdmGrid& g, int half_width, int oversampling, int channels, std::uint64_t seed);

/// Max abs difference between the FIR channel and the oracle for integer
/// channels (every l <= l_max, |k| <= k_max) on one random pilot frame.
double integer_channel_mismatch(const AfdmGrid& g, int oversampling, std::uint64_t seed);

struct ValidationLine {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationLine> lines;
  bool passed() const;
};

/// Envelope fidelity per C, FIR/oracle agreement at (W, O) from the config,
/// error decrease over (4,4) -> (8,8) -> (16,16), and integer-channel match.
ValidationReport validate_mode(const ExperimentConfig& cfg);

void write_validation(std::ostream& out, const ValidationReport& report);

}  // namespace afdm::harness
