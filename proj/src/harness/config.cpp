// SPDX-License-Identifier: Apache-2.0
#include "afdm/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace afdm::harness {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw InvalidParameter("bad value for " + key + ": '" + text + "'");
  }
  return value;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  for (const auto& s : split_list(text)) out.push_back(parse_number<T>(key, s));
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "1" || t == "true" || t == "on" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "off" || t == "no") return false;
  throw InvalidParameter("bad value for " + key + ": '" + text + "'");
}

const std::vector<std::string> kEstimators{"proposed", "integer-only", "two-d-search"};

}  // namespace

void ExperimentConfig::validate() const {
  if (c_list.empty() || snr_db_list.empty() || ep_ei_db_list.empty() || estimators.empty()) {
    throw InvalidParameter("configuration lists must be non-empty");
  }
  if (trials_per_point < 1) throw InvalidParameter("trials_per_point must be at least 1");
  if (estimates_per_trial < 1) throw InvalidParameter("estimates_per_trial must be at least 1");
  for (const auto& e : estimators) {
    if (std::find(kEstimators.begin(), kEstimators.end(), e) == kEstimators.end()) {
      throw InvalidParameter("unknown estimator '" + e + "'");
    }
  }
  for (int c : c_list) {
    if (c < 2 * k_max) throw InvalidParameter("C must be at least 2 k_max");
  }
  search.validate();
}

AfdmGrid ExperimentConfig::grid(int segments) const {
  return build_grid(n, k_max, segments - 2 * k_max, c2, l_max, n_cp);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "n",           "k_max",          "l_max",         "n_cp",
      "c2",          "c_list",         "snr_db",        "ep_ei_db",
      "trials",      "estimates",      "average",       "estimators",
      "seed",        "fir_w",          "oracle_o",      "validate_draws",
      "validate_channels", "threads",  "coarse_points", "refine_tol",
      "near_integer_db", "output"};
  return keys;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n") cfg.n = parse_number<int>(key, value);
  else if (key == "k_max") cfg.k_max = parse_number<int>(key, value);
  else if (key == "l_max") cfg.l_max = parse_number<int>(key, value);
  else if (key == "n_cp") cfg.n_cp = parse_number<int>(key, value);
  else if (key == "c2") cfg.c2 = parse_number<double>(key, value);
  else if (key == "c_list") cfg.c_list = parse_list<int>(key, value);
  else if (key == "snr_db") cfg.snr_db_list = parse_list<double>(key, value);
  else if (key == "ep_ei_db") cfg.ep_ei_db_list = parse_list<double>(key, value);
  else if (key == "trials") cfg.trials_per_point = parse_number<int>(key, value);
  else if (key == "estimates") cfg.estimates_per_trial = parse_number<int>(key, value);
  else if (key == "average") cfg.average_estimates = parse_bool(key, value);
  else if (key == "estimators") cfg.estimators = split_list(value);
  else if (key == "seed") cfg.master_seed = parse_number<std::uint64_t>(key, value);
  else if (key == "fir_w") cfg.fir_half_width = parse_number<int>(key, value);
  else if (key == "oracle_o") cfg.oracle_oversampling = parse_number<int>(key, value);
  else if (key == "validate_draws") cfg.validate_draws = parse_number<int>(key, value);
  else if (key == "validate_channels") cfg.validate_channels = parse_number<int>(key, value);
  else if (key == "threads") cfg.threads = parse_number<int>(key, value);
  else if (key == "coarse_points") cfg.search.coarse_points = parse_number<int>(key, value);
  else if (key == "refine_tol") cfg.search.refine_tol = parse_number<double>(key, value);
  else if (key == "near_integer_db") cfg.search.near_integer_margin_db = parse_number<double>(key, value);
  else if (key == "output") cfg.output = trim(value);
  else throw InvalidParameter("unknown configuration key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidParameter("line " + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return parse_config(in, std::move(base));
}

}  // namespace afdm::harness
