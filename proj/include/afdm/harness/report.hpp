// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>

#include "afdm/harness/experiment.hpp"

namespace afdm::harness {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kCsvHeader =
    "estimator,snr_db,ep_ei_db,C,delay_rmse,doppler_rmse,trials,mean_pspr,wall_ms";

/// One row per (estimator, point). Numbers use %.10g, so equal reports give
/// equal bytes.
void write_csv(std::ostream& out, const RmseReport& report);
/// Schema-versioned JSON with the standard errors and flag counts included.
void write_json(std::ostream& out, const RmseReport& report, const ExperimentConfig& cfg);
/// Parses write_json output back. Throws std::runtime_error on a schema mismatch.
RmseReport read_json(const std::string& text);

/// m, |F(m, m')|, upsilon, theta, envelope for every m.
void write_profile_csv(std::ostream& out, const AfdmGrid& g, const EnvelopeParams& p, int m_prime);
/// iota, gate_db rows of the table.
void write_elg_csv(std::ostream& out, const ElgTable& table);

}  // namespace afdm::harness
