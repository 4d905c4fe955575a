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

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "twinmig/channel.hpp"
#include "twinmig/errors.hpp"

namespace twinmig {

/// One provider type: efficiency value theta = G^2 / a and the probability
/// mass the publisher assigns to it.
struct MrpType {
  double theta = 1.0;
  double probability = 1.0;
};

inline constexpr double kProbabilitySumTolerance = 1e-9;

/// The publisher's belief over provider types, sorted by theta ascending,
/// plus the provider population size M.
struct TypeSpectrum {
  std::vector<MrpType> types;
  int population = 1;  // M

  std::size_t size() const { return types.size(); }

  void validate() const {
    if (types.empty())
      throw validation_error("types: at least one type is required");
    if (population < 1)
      throw validation_error("population: must be at least 1");
    double sum = 0.0;
    for (std::size_t n = 0; n < types.size(); ++n) {
      if (!(types[n].theta > 0.0))
        throw validation_error("theta: values must be positive");
      if (!(types[n].probability >= 0.0 && types[n].probability <= 1.0))
        throw validation_error("probabilities: values must lie in [0, 1]");
      if (n > 0 && types[n].theta < types[n - 1].theta)
        throw validation_error("theta: values must be sorted non-decreasing");
      sum += types[n].probability;
    }
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance)
      throw validation_error("probabilities: must sum to 1 (sum = " +
                             std::to_string(sum) + ")");
  }
};

/// Economic and task parameters of one contract-design instance.
struct ScenarioParams {
  MigrationTask task;
  ChannelParams channel;
  double beta = 200.0;  // reward units per unit of log-satisfaction

  void validate() const {
    task.validate();
    channel.validate();
    if (!(beta > 0.0)) throw validation_error("beta: must be positive");
  }
};

/// One bandwidth-reward pair offered to a type.
struct ContractItem {
  double bandwidth_hz = 0.0;
  double reward = 0.0;
};

using Contract = std::vector<ContractItem>;

/// Type value G^2 / a of a provider with channel gain G and bandwidth cost
/// coefficient a. Higher gain or cheaper bandwidth means a higher type.
inline double mrp_type_from_profile(double gain, double cost_coeff) {
  if (!(gain > 0.0))
    throw std::invalid_argument("mrp_type_from_profile: gain must be positive");
  if (!(cost_coeff > 0.0))
    throw std::invalid_argument("mrp_type_from_profile: cost_coeff must be positive");
  return gain * gain / cost_coeff;
}

// Physical channel gains of realistic radio links are ~1e-6 while bandwidth
// is counted in hertz, so type values derived from raw gains make the
// quadratic cost term swamp any satisfaction and pin the optimum to the grid
// floor. gain_scale sets the economic normalization; the default is matched
// to the stock scenario's grid.
inline constexpr double kDefaultGainScale = 4.0e9;

/// Type value derived from physical channel parameters.
inline double theta_from_channel(const ChannelParams& channel, double cost_coeff,
                                 double gain_scale = kDefaultGainScale) {
  return mrp_type_from_profile(gain_scale * channel_gain(channel), cost_coeff);
}

/// Provider utility R - b^2 / theta for one contract item.
inline double mrp_utility(const ContractItem& item, double theta) {
  if (!(theta > 0.0))
    throw std::invalid_argument("mrp_utility: theta must be positive");
  return item.reward - item.bandwidth_hz * item.bandwidth_hz / theta;
}

/// Publisher satisfaction beta * ln(K - A(b) + 1) if bandwidth b keeps the
/// task age within the bound K, nullopt otherwise.
inline std::optional<double> admissible_satisfaction(double bandwidth_hz,
                                                     const ScenarioParams& scenario) {
  const double age = aomt(bandwidth_hz, scenario.task, scenario.channel);
  if (age > scenario.task.max_aomt_s) return std::nullopt;
  return scenario.beta * std::log(scenario.task.max_aomt_s - age + 1.0);
}

/// Publisher satisfaction at bandwidth b. Throws infeasible_error when the
/// task age exceeds the bound; callers must treat such b as inadmissible.
inline double msp_satisfaction(double bandwidth_hz, const ScenarioParams& scenario) {
  const auto s = admissible_satisfaction(bandwidth_hz, scenario);
  if (!s)
    throw infeasible_error("bandwidth " + std::to_string(bandwidth_hz) +
                           " Hz pushes the task age above the bound");
  return *s;
}

/// Expected publisher utility sum_n M * Q_n * (S_n - R_n) of a full contract.
inline double msp_expected_utility(const Contract& contract,
                                   const TypeSpectrum& spectrum,
                                   const ScenarioParams& scenario) {
  spectrum.validate();
  if (contract.size() != spectrum.size())
    throw std::invalid_argument("msp_expected_utility: contract must have one item per type");
  const double m = static_cast<double>(spectrum.population);
  double total = 0.0;
  for (std::size_t n = 0; n < contract.size(); ++n) {
    const double s = msp_satisfaction(contract[n].bandwidth_hz, scenario);
    total += m * spectrum.types[n].probability * (s - contract[n].reward);
  }
  return total;
}

/// Coefficients of the screening-adjusted quadratic cost in the reformulated
/// objective: e_n = Q_n/theta_n + (1/theta_n - 1/theta_{n+1}) * sum_{j>n} Q_j
/// for n < N, and e_N = Q_N/theta_N.
inline std::vector<double> e_coefficients(const TypeSpectrum& spectrum) {
  spectrum.validate();
  const std::size_t n_types = spectrum.size();
  std::vector<double> e(n_types);
  double mass_above = 0.0;  // sum of Q_j for j > n
  for (std::size_t n = n_types; n-- > 0;) {
    const double theta = spectrum.types[n].theta;
    const double q = spectrum.types[n].probability;
    if (n + 1 == n_types) {
      e[n] = q / theta;
    } else {
      e[n] = q / theta + (1.0 / theta - 1.0 / spectrum.types[n + 1].theta) * mass_above;
    }
    mass_above += q;
  }
  return e;
}

}  // namespace twinmig
