#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 the twinmig authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "twinmig/contract.hpp"
#include "twinmig/economics.hpp"
#include "twinmig/errors.hpp"

namespace twinmig {

/// A fully validated experiment description: economic/task parameters, the
/// type spectrum, the search grid, and the payload sizes of the sweep.
struct Scenario {
  ScenarioParams params;
  TypeSpectrum spectrum;
  GridSpec grid;
  std::vector<double> sweep_data_bits;  // ascending, no duplicates
  std::string hash;                     // 16 hex digits over the resolved content
};

namespace detail {

using json = nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::string& section,
                                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known)
      throw validation_error(section + ": unknown key '" + item.key() + "'");
  }
}

inline const json& require_section(const json& root, const char* key) {
  if (!root.contains(key))
    throw validation_error(std::string("scenario: missing section '") + key + "'");
  const json& section = root.at(key);
  if (!section.is_object())
    throw validation_error(std::string(key) + ": must be an object");
  return section;
}

inline double require_number(const json& obj, const std::string& section,
                             const char* key) {
  if (!obj.contains(key))
    throw validation_error(section + "." + key + ": missing");
  if (!obj.at(key).is_number())
    throw validation_error(section + "." + key + ": must be a number");
  return obj.at(key).get<double>();
}

inline double optional_number(const json& obj, const std::string& section,
                              const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number())
    throw validation_error(section + "." + key + ": must be a number");
  return obj.at(key).get<double>();
}

inline long require_integer(const json& obj, const std::string& section,
                            const char* key) {
  if (!obj.contains(key))
    throw validation_error(section + "." + key + ": missing");
  if (!obj.at(key).is_number_integer())
    throw validation_error(section + "." + key + ": must be an integer");
  return obj.at(key).get<long>();
}

inline std::vector<double> require_number_array(const json& obj,
                                                const std::string& section,
                                                const char* key) {
  if (!obj.at(key).is_array() || obj.at(key).empty())
    throw validation_error(section + "." + key + ": must be a non-empty array");
  std::vector<double> values;
  values.reserve(obj.at(key).size());
  for (const auto& v : obj.at(key)) {
    if (!v.is_number())
      throw validation_error(section + "." + key + ": entries must be numbers");
    values.push_back(v.get<double>());
  }
  return values;
}

inline void fnv_append(std::uint64_t& h, std::string_view text) {
  for (const unsigned char c : text) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ULL;
  }
}

inline void fnv_append(std::uint64_t& h, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g;", value);
  fnv_append(h, buf);
}

/// Stable fingerprint of the resolved scenario content, independent of file
/// formatting and key order.
inline std::string scenario_fingerprint(const Scenario& sc) {
  std::uint64_t h = 1469598103934665603ULL;
  fnv_append(h, sc.params.channel.transmit_power_w);
  fnv_append(h, sc.params.channel.unit_gain);
  fnv_append(h, sc.params.channel.distance_m);
  fnv_append(h, sc.params.channel.path_loss_exponent);
  fnv_append(h, sc.params.channel.noise_density_w_hz);
  fnv_append(h, sc.params.task.data_bits);
  fnv_append(h, sc.params.task.fixed_time_s);
  fnv_append(h, sc.params.task.max_aomt_s);
  fnv_append(h, sc.params.beta);
  fnv_append(h, static_cast<double>(sc.spectrum.population));
  fnv_append(h, static_cast<double>(sc.spectrum.size()));
  for (const auto& t : sc.spectrum.types) {
    fnv_append(h, t.theta);
    fnv_append(h, t.probability);
  }
  fnv_append(h, sc.grid.b_min_hz);
  fnv_append(h, sc.grid.b_max_hz);
  fnv_append(h, sc.grid.step_hz);
  fnv_append(h, static_cast<double>(sc.sweep_data_bits.size()));
  for (const double d : sc.sweep_data_bits) fnv_append(h, d);

  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace detail

/// Default payload sweep: six evenly spaced sizes between 100 MB and 200 MB.
inline std::vector<double> default_sweep_data_bits() {
  std::vector<double> values;
  for (int i = 0; i < 6; ++i)
    values.push_back(8e8 + static_cast<double>(i) * (1.6e9 - 8e8) / 5.0);
  return values;
}

/// Parses and fully validates a scenario document. dB/dBm inputs are
/// converted to linear units here, once; unknown keys are rejected.
inline Scenario parse_scenario(const std::string& text) {
  detail::json root;
  try {
    root = detail::json::parse(text);
  } catch (const detail::json::parse_error& e) {
    throw validation_error(std::string("scenario: parse error: ") + e.what());
  }
  if (!root.is_object())
    throw validation_error("scenario: top level must be an object");
  detail::reject_unknown_keys(root, "scenario",
                              {"channel", "task", "economics", "grid", "sweep"});

  Scenario sc;

  const auto& channel = detail::require_section(root, "channel");
  detail::reject_unknown_keys(channel, "channel",
                              {"transmit_power_dbm", "unit_gain", "distance_m",
                               "path_loss_exponent", "noise_density_dbm_hz"});
  sc.params.channel = ChannelParams::from_dbm(
      detail::require_number(channel, "channel", "transmit_power_dbm"),
      detail::optional_number(channel, "channel", "unit_gain", 1.0),
      detail::require_number(channel, "channel", "distance_m"),
      detail::require_number(channel, "channel", "path_loss_exponent"),
      detail::require_number(channel, "channel", "noise_density_dbm_hz"));

  const auto& task = detail::require_section(root, "task");
  detail::reject_unknown_keys(task, "task", {"data_bits", "fixed_time_s", "max_aomt_s"});
  sc.params.task.data_bits = detail::require_number(task, "task", "data_bits");
  sc.params.task.fixed_time_s = detail::require_number(task, "task", "fixed_time_s");
  sc.params.task.max_aomt_s = detail::require_number(task, "task", "max_aomt_s");

  const auto& econ = detail::require_section(root, "economics");
  detail::reject_unknown_keys(
      econ, "economics",
      {"beta", "population", "theta", "theta_base", "n_types", "probabilities"});
  sc.params.beta = detail::require_number(econ, "economics", "beta");
  sc.spectrum.population =
      static_cast<int>(detail::require_integer(econ, "economics", "population"));

  const bool has_theta_list = econ.contains("theta");
  const bool has_generator = econ.contains("theta_base") || econ.contains("n_types");
  if (has_theta_list && has_generator)
    throw validation_error(
        "economics: give either 'theta' or 'theta_base'/'n_types', not both");
  if (!has_theta_list && !has_generator)
    throw validation_error(
        "economics: one of 'theta' or 'theta_base' with 'n_types' is required");

  std::vector<double> thetas;
  if (has_theta_list) {
    thetas = detail::require_number_array(econ, "economics", "theta");
  } else {
    const double theta_base = detail::require_number(econ, "economics", "theta_base");
    const long n_types = detail::require_integer(econ, "economics", "n_types");
    if (!(theta_base > 0.0))
      throw validation_error("economics.theta_base: must be positive");
    if (n_types < 1)
      throw validation_error("economics.n_types: must be at least 1");
    for (long n = 1; n <= n_types; ++n)
      thetas.push_back(theta_base * static_cast<double>(n));
  }

  std::vector<double> probabilities;
  if (!econ.contains("probabilities")) {
    probabilities.assign(thetas.size(), 1.0 / static_cast<double>(thetas.size()));
  } else if (econ.at("probabilities").is_string()) {
    if (econ.at("probabilities").get<std::string>() != "uniform")
      throw validation_error(
          "economics.probabilities: must be an array or the string \"uniform\"");
    probabilities.assign(thetas.size(), 1.0 / static_cast<double>(thetas.size()));
  } else {
    probabilities = detail::require_number_array(econ, "economics", "probabilities");
    if (probabilities.size() != thetas.size())
      throw validation_error("economics.probabilities: need one entry per type");
  }

  sc.spectrum.types.reserve(thetas.size());
  for (std::size_t n = 0; n < thetas.size(); ++n)
    sc.spectrum.types.push_back({thetas[n], probabilities[n]});

  const auto& grid = detail::require_section(root, "grid");
  detail::reject_unknown_keys(grid, "grid", {"b_min_hz", "b_max_hz", "step_hz"});
  sc.grid.b_min_hz = detail::require_number(grid, "grid", "b_min_hz");
  sc.grid.b_max_hz = detail::require_number(grid, "grid", "b_max_hz");
  sc.grid.step_hz = detail::require_number(grid, "grid", "step_hz");

  if (root.contains("sweep")) {
    const auto& sweep = detail::require_section(root, "sweep");
    detail::reject_unknown_keys(sweep, "sweep", {"data_bits"});
    if (!sweep.contains("data_bits"))
      throw validation_error("sweep.data_bits: missing");
    sc.sweep_data_bits = detail::require_number_array(sweep, "sweep", "data_bits");
    for (const double d : sc.sweep_data_bits)
      if (!(d >= 0.0))
        throw validation_error("sweep.data_bits: entries must be non-negative");
    std::sort(sc.sweep_data_bits.begin(), sc.sweep_data_bits.end());
    if (std::adjacent_find(sc.sweep_data_bits.begin(), sc.sweep_data_bits.end()) !=
        sc.sweep_data_bits.end())
      throw validation_error("sweep.data_bits: duplicate value");
  } else {
    sc.sweep_data_bits = default_sweep_data_bits();
  }

  sc.params.validate();
  sc.spectrum.validate();
  sc.grid.validate();

  sc.hash = detail::scenario_fingerprint(sc);
  return sc;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw validation_error("scenario: cannot open file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

}  // namespace twinmig
