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
#include <stdexcept>
#include <vector>

#include "twinmig/economics.hpp"
#include "twinmig/errors.hpp"

namespace twinmig {

/// Absolute utility slack allowed at binding incentive constraints.
inline constexpr double kIcTolerance = 1e-9;

/// The bandwidth search grid: points b_min + k*step for k = 0, 1, ...
/// strictly below b_max, matching the scan loop of the designer.
struct GridSpec {
  double b_min_hz = 1e5;
  double b_max_hz = 4e7;
  double step_hz = 1e4;

  void validate() const {
    if (!(b_min_hz > 0.0))
      throw validation_error("grid.b_min_hz: must be positive");
    if (!(b_max_hz > b_min_hz))
      throw validation_error("grid.b_max_hz: must exceed grid.b_min_hz");
    if (!(step_hz > 0.0))
      throw validation_error("grid.step_hz: must be positive");
    if (!((b_max_hz - b_min_hz) / step_hz >= 1.0))
      throw validation_error("grid: (b_max_hz - b_min_hz) / step_hz must be at least 1");
  }

  std::vector<double> points() const {
    validate();
    std::vector<double> pts;
    for (std::size_t k = 0;; ++k) {
      const double b = b_min_hz + static_cast<double>(k) * step_hz;
      if (!(b < b_max_hz)) break;
      pts.push_back(b);
    }
    return pts;
  }
};

struct FeasibilityViolation {
  enum class Kind { ir, ic };
  Kind kind = Kind::ir;
  std::size_t type_index = 0;  // the type whose constraint is violated
  std::size_t item_index = 0;  // the item it would rather take (== type_index for IR)
  double slack = 0.0;          // negative by the violation margin
};

/// Full participation / truthfulness audit of a contract: the N x N matrix
/// of cross utilities plus every violated constraint.
struct FeasibilityReport {
  std::vector<bool> ir_satisfied;
  std::vector<std::vector<double>> ic_matrix;  // [n][j] = utility of type n under item j
  std::vector<FeasibilityViolation> violations;

  bool feasible() const { return violations.empty(); }
};

/// Checks all N participation constraints and all N(N-1) truthfulness pairs,
/// not only adjacent ones.
inline FeasibilityReport check_feasibility(const Contract& contract,
                                           const TypeSpectrum& spectrum,
                                           double tolerance = kIcTolerance) {
  spectrum.validate();
  if (contract.size() != spectrum.size())
    throw std::invalid_argument("check_feasibility: contract must have one item per type");
  const std::size_t n_types = contract.size();

  FeasibilityReport report;
  report.ir_satisfied.assign(n_types, true);
  report.ic_matrix.assign(n_types, std::vector<double>(n_types, 0.0));
  for (std::size_t n = 0; n < n_types; ++n)
    for (std::size_t j = 0; j < n_types; ++j)
      report.ic_matrix[n][j] = mrp_utility(contract[j], spectrum.types[n].theta);

  for (std::size_t n = 0; n < n_types; ++n) {
    const double own = report.ic_matrix[n][n];
    if (own < -tolerance) {
      report.ir_satisfied[n] = false;
      report.violations.push_back(
          {FeasibilityViolation::Kind::ir, n, n, own});
    }
    for (std::size_t j = 0; j < n_types; ++j) {
      if (j == n) continue;
      const double slack = own - report.ic_matrix[n][j];
      if (slack < -tolerance)
        report.violations.push_back({FeasibilityViolation::Kind::ic, n, j, slack});
    }
  }
  return report;
}

/// Cheapest rewards that keep a monotone bandwidth vector feasible: the
/// lowest type earns exactly its cost, and each higher type earns the
/// previous reward plus the bandwidth increment priced at its own type.
/// Binds the lowest participation constraint and every adjacent downward
/// truthfulness constraint with equality.
inline std::vector<double> optimal_rewards(const std::vector<double>& bandwidths,
                                           const TypeSpectrum& spectrum) {
  spectrum.validate();
  if (bandwidths.size() != spectrum.size())
    throw std::invalid_argument("optimal_rewards: need one bandwidth per type");
  if (!std::is_sorted(bandwidths.begin(), bandwidths.end()))
    throw std::invalid_argument("optimal_rewards: bandwidths must be non-decreasing");
  if (!(bandwidths.front() >= 0.0))
    throw std::invalid_argument("optimal_rewards: bandwidths must be non-negative");

  std::vector<double> rewards(bandwidths.size());
  rewards[0] = bandwidths[0] * bandwidths[0] / spectrum.types[0].theta;
  for (std::size_t n = 1; n < bandwidths.size(); ++n) {
    const double delta =
        (bandwidths[n] * bandwidths[n] - bandwidths[n - 1] * bandwidths[n - 1]) /
        spectrum.types[n].theta;
    rewards[n] = rewards[n - 1] + delta;
  }
  return rewards;
}

namespace detail {

inline double objective_term(double satisfaction, double probability, double e_coeff,
                             double population, double bandwidth_hz) {
  return population *
         (probability * satisfaction - e_coeff * bandwidth_hz * bandwidth_hz);
}

/// Per-type objective tabulated over every grid point; inadmissible points
/// (task age above the bound) hold -infinity.
struct ObjectiveTable {
  std::vector<double> grid;
  std::vector<std::vector<double>> value;  // [type][grid point]
  bool any_admissible = false;
};

inline ObjectiveTable build_objective_table(const GridSpec& grid,
                                            const TypeSpectrum& spectrum,
                                            const ScenarioParams& scenario) {
  const auto e = e_coefficients(spectrum);  // validates the spectrum
  ObjectiveTable table;
  table.grid = grid.points();
  const std::size_t n_points = table.grid.size();

  // Satisfaction does not depend on the type; evaluate once per point.
  std::vector<double> satisfaction(n_points, 0.0);
  std::vector<char> admissible(n_points, 0);
  for (std::size_t k = 0; k < n_points; ++k) {
    if (const auto s = admissible_satisfaction(table.grid[k], scenario)) {
      satisfaction[k] = *s;
      admissible[k] = 1;
      table.any_admissible = true;
    }
  }

  const double m = static_cast<double>(spectrum.population);
  table.value.assign(spectrum.size(), std::vector<double>(n_points));
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    const double q = spectrum.types[n].probability;
    for (std::size_t k = 0; k < n_points; ++k) {
      table.value[n][k] =
          admissible[k]
              ? objective_term(satisfaction[k], q, e[n], m, table.grid[k])
              : -std::numeric_limits<double>::infinity();
    }
  }
  return table;
}

/// Index of the largest value; ties go to the smaller index (smaller b).
inline std::size_t argmax_index(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] > values[best]) best = k;
  return best;
}

/// Grid index maximizing the summed objective of types [lo, hi].
inline std::size_t bunch_argmax(const ObjectiveTable& table, std::size_t lo,
                                std::size_t hi) {
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < table.grid.size(); ++k) {
    double sum = 0.0;
    for (std::size_t n = lo; n <= hi; ++n) sum += table.value[n][k];
    if (sum > best_value) {
      best_value = sum;
      best = k;
    }
  }
  if (best_value == -std::numeric_limits<double>::infinity())
    throw infeasible_error("no grid bandwidth keeps the task age within the bound");
  return best;
}

}  // namespace detail

/// The reformulated per-type objective M * (Q_n * S(b) - e_n * b^2), or
/// -infinity when bandwidth b cannot meet the task age bound.
inline double per_type_objective(double bandwidth_hz, std::size_t type_index,
                                 const TypeSpectrum& spectrum,
                                 const ScenarioParams& scenario) {
  const auto e = e_coefficients(spectrum);
  if (type_index >= spectrum.size())
    throw std::invalid_argument("per_type_objective: type index out of range");
  const auto s = admissible_satisfaction(bandwidth_hz, scenario);
  if (!s) return -std::numeric_limits<double>::infinity();
  return detail::objective_term(*s, spectrum.types[type_index].probability,
                                e[type_index],
                                static_cast<double>(spectrum.population),
                                bandwidth_hz);
}

/// Scans the whole grid once per type and returns each type's maximizer of
/// the reformulated objective. Ties break toward the smaller bandwidth. The
/// result need not be monotone in the type index.
inline std::vector<double> grid_search_bandwidth(const GridSpec& grid,
                                                 const TypeSpectrum& spectrum,
                                                 const ScenarioParams& scenario) {
  const auto table = detail::build_objective_table(grid, spectrum, scenario);
  if (!table.any_admissible)
    throw infeasible_error("no grid bandwidth keeps the task age within the bound");
  std::vector<double> best(spectrum.size());
  for (std::size_t n = 0; n < spectrum.size(); ++n)
    best[n] = table.grid[detail::argmax_index(table.value[n])];
  return best;
}

/// Monotonicity repair. Adjacent types whose raw maximizers are out of order
/// are pooled onto one shared bandwidth, chosen as the grid maximizer of the
/// pool's summed objective; pooling repeats until the vector is
/// non-decreasing. A vector that is already monotone is returned unchanged.
inline std::vector<double> bunching_and_ironing(const std::vector<double>& raw,
                                                const TypeSpectrum& spectrum,
                                                const ScenarioParams& scenario,
                                                const GridSpec& grid) {
  spectrum.validate();
  if (raw.size() != spectrum.size())
    throw std::invalid_argument("bunching_and_ironing: need one bandwidth per type");
  if (std::is_sorted(raw.begin(), raw.end())) return raw;

  const auto table = detail::build_objective_table(grid, spectrum, scenario);

  struct Bunch {
    std::size_t lo, hi;
    double bandwidth;
  };
  std::vector<Bunch> bunches;
  bunches.reserve(raw.size());
  for (std::size_t n = 0; n < raw.size(); ++n) bunches.push_back({n, n, raw[n]});

  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i + 1 < bunches.size(); ++i) {
      if (bunches[i].bandwidth <= bunches[i + 1].bandwidth) continue;
      Bunch fused{bunches[i].lo, bunches[i + 1].hi, 0.0};
      fused.bandwidth = table.grid[detail::bunch_argmax(table, fused.lo, fused.hi)];
      bunches[i] = fused;
      bunches.erase(bunches.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      merged = true;
      break;  // a merge can create a new violation upstream; rescan from the left
    }
  }

  std::vector<double> ironed(raw.size());
  for (const auto& bunch : bunches)
    for (std::size_t n = bunch.lo; n <= bunch.hi; ++n) ironed[n] = bunch.bandwidth;
  return ironed;
}

struct DesignResult {
  Contract items;
  double msp_utility = 0.0;
};

/// End-to-end designer: per-type grid search, monotonicity repair, then the
/// cheapest feasible rewards. The returned contract passes check_feasibility
/// with zero violations.
inline DesignResult design_contract(const GridSpec& grid, const TypeSpectrum& spectrum,
                                    const ScenarioParams& scenario) {
  const auto raw = grid_search_bandwidth(grid, spectrum, scenario);
  const auto bandwidths = bunching_and_ironing(raw, spectrum, scenario, grid);
  const auto rewards = optimal_rewards(bandwidths, spectrum);

  DesignResult result;
  result.items.reserve(bandwidths.size());
  for (std::size_t n = 0; n < bandwidths.size(); ++n)
    result.items.push_back({bandwidths[n], rewards[n]});
  result.msp_utility = msp_expected_utility(result.items, spectrum, scenario);
  return result;
}

}  // namespace twinmig
