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

// Shared fixtures and generators for the test suites.

#include <cstddef>
#include <random>
#include <vector>

#include "twinmig/contract.hpp"
#include "twinmig/economics.hpp"

namespace support {

/// Stock radio/task/economics parameters used across the suites: 23 dBm
/// transmitter, -174 dBm/Hz noise, 500 m at path loss 2, 100 MB payload,
/// T = 5 s, K = 50 s, beta = 200.
inline twinmig::ScenarioParams default_params() {
  twinmig::ScenarioParams params;
  params.channel = twinmig::ChannelParams::from_dbm(23.0, 1.0, 500.0, 2.0, -174.0);
  params.task = {8e8, 5.0, 50.0};
  params.beta = 200.0;
  return params;
}

inline twinmig::TypeSpectrum make_spectrum(const std::vector<double>& thetas,
                                           const std::vector<double>& probabilities,
                                           int population = 10) {
  twinmig::TypeSpectrum spectrum;
  spectrum.population = population;
  for (std::size_t n = 0; n < thetas.size(); ++n)
    spectrum.types.push_back({thetas[n], probabilities[n]});
  return spectrum;
}

inline std::vector<double> uniform_probabilities(std::size_t n_types) {
  return std::vector<double>(n_types, 1.0 / static_cast<double>(n_types));
}

/// theta_n = theta_base * n with a uniform type distribution, the stock
/// spectrum shape.
inline twinmig::TypeSpectrum linear_spectrum(std::size_t n_types,
                                             double theta_base = 5e11,
                                             int population = 10) {
  std::vector<double> thetas;
  for (std::size_t n = 1; n <= n_types; ++n)
    thetas.push_back(theta_base * static_cast<double>(n));
  return make_spectrum(thetas, uniform_probabilities(n_types), population);
}

inline twinmig::GridSpec default_grid() { return {1e5, 4e7, 1e4}; }

/// Sorted positive thetas; roughly one gap in ten is zero so equal types
/// get exercised too.
inline std::vector<double> random_sorted_thetas(std::mt19937_64& rng, std::size_t n,
                                                double first_lo, double first_hi,
                                                double gap_hi) {
  std::uniform_real_distribution<double> first(first_lo, first_hi);
  std::uniform_real_distribution<double> gap(0.0, gap_hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> thetas{first(rng)};
  for (std::size_t i = 1; i < n; ++i)
    thetas.push_back(thetas.back() + (unit(rng) < 0.1 ? 0.0 : gap(rng)));
  return thetas;
}

inline std::vector<double> random_probabilities(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> mass(0.05, 1.0);
  std::vector<double> q(n);
  double sum = 0.0;
  for (auto& value : q) {
    value = mass(rng);
    sum += value;
  }
  for (auto& value : q) value /= sum;
  return q;
}

/// Sorted draws from [lo, hi]; adjacent duplicates appear now and then.
inline std::vector<double> random_monotone(std::mt19937_64& rng, std::size_t n,
                                           double lo, double hi) {
  std::uniform_real_distribution<double> value(lo, hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> b(n);
  for (auto& v : b) v = value(rng);
  std::sort(b.begin(), b.end());
  if (n >= 2 && unit(rng) < 0.2) {
    const auto k = static_cast<std::size_t>(rng() % (n - 1));
    b[k + 1] = b[k];
  }
  return b;
}

inline twinmig::Contract zip_contract(const std::vector<double>& bandwidths,
                                      const std::vector<double>& rewards) {
  twinmig::Contract items;
  for (std::size_t n = 0; n < bandwidths.size(); ++n)
    items.push_back({bandwidths[n], rewards[n]});
  return items;
}

/// Visits every non-decreasing index vector of length n_types over
/// {0, ..., n_points - 1}.
template <typename Visitor>
inline void for_each_monotone_indices(std::size_t n_types, std::size_t n_points,
                                      Visitor&& visit) {
  std::vector<std::size_t> indices(n_types, 0);
  auto recurse = [&](auto&& self, std::size_t depth, std::size_t lo) -> void {
    if (depth == n_types) {
      visit(indices);
      return;
    }
    for (std::size_t k = lo; k < n_points; ++k) {
      indices[depth] = k;
      self(self, depth + 1, k);
    }
  };
  recurse(recurse, 0, 0);
}

struct BestDesign {
  double utility = -std::numeric_limits<double>::infinity();
  std::vector<double> bandwidths;
};

/// Exhaustive reference for the designer: the best expected publisher
/// utility over every monotone grid-valued bandwidth vector, each priced
/// with the cheapest feasible rewards. Independent of the search/ironing
/// path under test.
inline BestDesign enumerate_best_design(const twinmig::GridSpec& grid,
                                        const twinmig::TypeSpectrum& spectrum,
                                        const twinmig::ScenarioParams& params) {
  const auto points = grid.points();
  std::vector<double> satisfaction(points.size());
  std::vector<char> admissible(points.size(), 0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (const auto s = twinmig::admissible_satisfaction(points[k], params)) {
      satisfaction[k] = *s;
      admissible[k] = 1;
    }
  }

  const double m = static_cast<double>(spectrum.population);
  BestDesign best;
  for_each_monotone_indices(
      spectrum.size(), points.size(), [&](const std::vector<std::size_t>& idx) {
        for (const std::size_t k : idx)
          if (!admissible[k]) return;
        std::vector<double> b(idx.size());
        for (std::size_t n = 0; n < idx.size(); ++n) b[n] = points[idx[n]];
        const auto rewards = twinmig::optimal_rewards(b, spectrum);
        double utility = 0.0;
        for (std::size_t n = 0; n < idx.size(); ++n)
          utility += m * spectrum.types[n].probability *
                     (satisfaction[idx[n]] - rewards[n]);
        if (utility > best.utility) {
          best.utility = utility;
          best.bandwidths = b;
        }
      });
  return best;
}

inline double enumerate_best_utility(const twinmig::GridSpec& grid,
                                     const twinmig::TypeSpectrum& spectrum,
                                     const twinmig::ScenarioParams& params) {
  return enumerate_best_design(grid, spectrum, params).utility;
}

}  // namespace support
