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
#include <cstddef>
#include <limits>
#include <vector>

#include "twinmig/contract.hpp"
#include "twinmig/economics.hpp"
#include "twinmig/errors.hpp"

namespace twinmig {

struct BaselineResult {
  Contract items;
  double msp_utility = 0.0;
};

struct WelfareResult {
  Contract items;
  double msp_utility = 0.0;
  std::vector<double> mrp_utilities;  // realized own-item utility per type
  double welfare = 0.0;               // sum_n M * Q_n * (S_n - b_n^2 / theta_n)
};

namespace detail {

/// Per-type maximizers of the welfare term M * Q_n * (S(b) - b^2 / theta_n)
/// over admissible grid points; ties break toward the smaller bandwidth.
/// With thetas sorted ascending the result is non-decreasing.
inline std::vector<double> welfare_argmax(const GridSpec& grid,
                                          const TypeSpectrum& spectrum,
                                          const ScenarioParams& scenario) {
  spectrum.validate();
  const auto points = grid.points();

  std::vector<double> satisfaction(points.size());
  std::vector<char> admissible(points.size(), 0);
  bool any = false;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (const auto s = admissible_satisfaction(points[k], scenario)) {
      satisfaction[k] = *s;
      admissible[k] = 1;
      any = true;
    }
  }
  if (!any)
    throw infeasible_error("no grid bandwidth keeps the task age within the bound");

  const double m = static_cast<double>(spectrum.population);
  std::vector<double> best(spectrum.size());
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    const double theta = spectrum.types[n].theta;
    const double q = spectrum.types[n].probability;
    double best_value = -std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (!admissible[k]) continue;
      const double b = points[k];
      const double value = m * q * (satisfaction[k] - b * b / theta);
      if (value > best_value) {
        best_value = value;
        best_k = k;
      }
    }
    best[n] = points[best_k];
  }
  return best;
}

}  // namespace detail

/// Benchmark with observable types: the publisher picks each type's
/// surplus-maximizing bandwidth and pays exactly the provider's cost, so
/// every provider's own-item utility is zero.
inline BaselineResult complete_info_contract(const GridSpec& grid,
                                             const TypeSpectrum& spectrum,
                                             const ScenarioParams& scenario) {
  const auto bandwidths = detail::welfare_argmax(grid, spectrum, scenario);
  BaselineResult result;
  result.items.reserve(bandwidths.size());
  for (std::size_t n = 0; n < bandwidths.size(); ++n) {
    const double b = bandwidths[n];
    result.items.push_back({b, b * b / spectrum.types[n].theta});
  }
  result.msp_utility = msp_expected_utility(result.items, spectrum, scenario);
  return result;
}

/// Benchmark maximizing welfare (satisfaction minus provider cost) per type.
/// The allocation is ironed if it ever comes out non-monotone, and rewards
/// are set like the screening designer's so the menu stays feasible; the
/// welfare figure itself does not depend on that split.
inline WelfareResult social_welfare_contract(const GridSpec& grid,
                                             const TypeSpectrum& spectrum,
                                             const ScenarioParams& scenario) {
  auto bandwidths = detail::welfare_argmax(grid, spectrum, scenario);
  if (!std::is_sorted(bandwidths.begin(), bandwidths.end()))
    bandwidths = bunching_and_ironing(bandwidths, spectrum, scenario, grid);
  const auto rewards = optimal_rewards(bandwidths, spectrum);

  WelfareResult result;
  result.items.reserve(bandwidths.size());
  for (std::size_t n = 0; n < bandwidths.size(); ++n)
    result.items.push_back({bandwidths[n], rewards[n]});
  result.msp_utility = msp_expected_utility(result.items, spectrum, scenario);

  const double m = static_cast<double>(spectrum.population);
  result.mrp_utilities.resize(bandwidths.size());
  result.welfare = 0.0;
  for (std::size_t n = 0; n < bandwidths.size(); ++n) {
    const double theta = spectrum.types[n].theta;
    const double q = spectrum.types[n].probability;
    const double b = bandwidths[n];
    const double s = msp_satisfaction(b, scenario);
    result.mrp_utilities[n] = mrp_utility(result.items[n], theta);
    result.welfare += m * q * (s - b * b / theta);
  }
  return result;
}

}  // namespace twinmig
