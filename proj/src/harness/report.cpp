// SPDX-License-Identifier: Apache-2.0
#include "afdm/harness/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace afdm::harness {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const RmseReport& report) {
  out << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.estimator << ',' << num(r.snr_db) << ',' << num(r.ep_ei_db) << ',' << r.segments << ','
        << num(r.delay_rmse) << ',' << num(r.doppler_rmse) << ',' << r.trials << ',' << num(r.mean_pspr) << ','
        << num(r.wall_ms) << '\n';
  }
}

void write_json(std::ostream& out, const RmseReport& report, const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = {{"n", cfg.n},
                 {"k_max", cfg.k_max},
                 {"l_max", cfg.l_max},
                 {"n_cp", cfg.n_cp},
                 {"c2", cfg.c2},
                 {"trials", cfg.trials_per_point},
                 {"estimates", cfg.estimates_per_trial},
                 {"average", cfg.average_estimates},
                 {"seed", cfg.master_seed},
                 {"fir_w", cfg.fir_half_width}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"estimator", r.estimator},
                    {"snr_db", r.snr_db},
                    {"ep_ei_db", r.ep_ei_db},
                    {"C", r.segments},
                    {"delay_rmse", r.delay_rmse},
                    {"doppler_rmse", r.doppler_rmse},
                    {"delay_stderr", r.delay_stderr},
                    {"doppler_stderr", r.doppler_stderr},
                    {"trials", r.trials},
                    {"flagged", r.flagged},
                    {"mean_pspr", r.mean_pspr},
                    {"wall_ms", r.wall_ms}});
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << '\n';
}

RmseReport read_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("schema_version", -1) != kReportSchemaVersion) {
    throw std::runtime_error("unsupported report schema");
  }
  RmseReport report;
  for (const auto& r : j.at("rows")) {
    RmseRow row;
    row.estimator = r.at("estimator").get<std::string>();
    row.snr_db = r.at("snr_db").get<double>();
    row.ep_ei_db = r.at("ep_ei_db").get<double>();
    row.segments = r.at("C").get<int>();
    row.delay_rmse = r.at("delay_rmse").get<double>();
    row.doppler_rmse = r.at("doppler_rmse").get<double>();
    row.delay_stderr = r.value("delay_stderr", 0.0);
    row.doppler_stderr = r.value("doppler_stderr", 0.0);
    row.trials = r.at("trials").get<int>();
    row.flagged = r.value("flagged", 0);
    row.mean_pspr = r.at("mean_pspr").get<double>();
    row.wall_ms = r.at("wall_ms").get<double>();
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_profile_csv(std::ostream& out, const AfdmGrid& g, const EnvelopeParams& p, int m_prime) {
  const int n = g.n();
  std::vector<int> rows(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) rows[static_cast<std::size_t>(m)] = m;
  CVec f(static_cast<std::size_t>(n));
  exact_f_column(g, p, m_prime, rows, f);
  out << "m,abs_F,upsilon,theta,envelope\n";
  for (int m = 0; m < n; ++m) {
    const EnvelopeValue e = envelope_magnitude(g, p, m, m_prime);
    out << m << ',' << num(std::abs(f[static_cast<std::size_t>(m)])) << ',' << num(e.upsilon) << ','
        << num(e.theta) << ',' << num(e.value) << '\n';
  }
}

void write_elg_csv(std::ostream& out, const ElgTable& table) {
  out << "iota,gate_db\n";
  for (std::size_t i = 0; i < table.iota.size(); ++i) out << num(table.iota[i]) << ',' << num(table.gate[i]) << '\n';
}

}  // namespace afdm::harness
