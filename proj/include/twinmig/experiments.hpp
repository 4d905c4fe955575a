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

#include <array>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "twinmig/baselines.hpp"
#include "twinmig/contract.hpp"
#include "twinmig/scenario.hpp"

namespace twinmig {

enum class Mechanism { asymmetric, complete_info, social_welfare };

inline constexpr std::array<Mechanism, 3> kAllMechanisms = {
    Mechanism::asymmetric, Mechanism::complete_info, Mechanism::social_welfare};

inline const char* mechanism_name(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::asymmetric: return "asymmetric";
    case Mechanism::complete_info: return "complete-info";
    case Mechanism::social_welfare: return "social-welfare";
  }
  return "unknown";
}

/// Accepts both the full mechanism name and its short CLI form.
inline std::optional<Mechanism> parse_mechanism(std::string_view name) {
  if (name == "asymmetric") return Mechanism::asymmetric;
  if (name == "complete" || name == "complete-info") return Mechanism::complete_info;
  if (name == "social" || name == "social-welfare") return Mechanism::social_welfare;
  return std::nullopt;
}

/// Cross-utility matrix of the designed contract plus per-row verdicts:
/// every type must weakly prefer its own item (IC) and earn a non-negative
/// utility from it (IR).
struct FeasibilityMatrix {
  Contract items;
  double msp_utility = 0.0;
  std::vector<std::vector<double>> utility;  // [n][j]: type n under item j
  std::vector<bool> ir_ok;                   // diagonal non-negative
  std::vector<bool> ic_ok;                   // diagonal row-wise maximal

  bool all_ok() const {
    for (std::size_t n = 0; n < ir_ok.size(); ++n)
      if (!ir_ok[n] || !ic_ok[n]) return false;
    return true;
  }
};

inline FeasibilityMatrix run_feasibility_matrix(const Scenario& scenario) {
  const auto design = design_contract(scenario.grid, scenario.spectrum, scenario.params);
  const std::size_t n_types = scenario.spectrum.size();

  FeasibilityMatrix matrix;
  matrix.items = design.items;
  matrix.msp_utility = design.msp_utility;
  matrix.utility.assign(n_types, std::vector<double>(n_types, 0.0));
  matrix.ir_ok.assign(n_types, false);
  matrix.ic_ok.assign(n_types, false);

  for (std::size_t n = 0; n < n_types; ++n)
    for (std::size_t j = 0; j < n_types; ++j)
      matrix.utility[n][j] =
          mrp_utility(design.items[j], scenario.spectrum.types[n].theta);

  for (std::size_t n = 0; n < n_types; ++n) {
    const double own = matrix.utility[n][n];
    matrix.ir_ok[n] = own >= -kIcTolerance;
    bool row_max = true;
    for (std::size_t j = 0; j < n_types; ++j)
      if (matrix.utility[n][j] > own + kIcTolerance) row_max = false;
    matrix.ic_ok[n] = row_max;
  }
  return matrix;
}

/// Expected sum of provider utilities under a contract: M * sum_n Q_n * U_n.
inline double mrp_sum_utility(const Contract& items, const TypeSpectrum& spectrum) {
  double sum = 0.0;
  for (std::size_t n = 0; n < items.size(); ++n)
    sum += spectrum.types[n].probability * mrp_utility(items[n], spectrum.types[n].theta);
  return static_cast<double>(spectrum.population) * sum;
}

/// One sweep result. A row with feasible == false records a payload size for
/// which no grid bandwidth meets the age bound; its value fields are unset.
struct SweepRow {
  Mechanism mechanism = Mechanism::asymmetric;
  double data_bits = 0.0;
  bool feasible = true;
  std::vector<double> bandwidths;
  std::vector<double> rewards;
  double msp_utility = 0.0;
  double mrp_sum_utility = 0.0;
};

/// Runs every requested mechanism over the scenario's payload sweep. Rows
/// come out ordered by (mechanism, payload size), one row per pair,
/// regardless of the order mechanisms were requested in.
inline std::vector<SweepRow> sweep_data_size(const Scenario& scenario,
                                             const std::vector<Mechanism>& mechanisms) {
  std::vector<SweepRow> rows;
  for (const Mechanism mechanism : kAllMechanisms) {
    const bool wanted = std::any_of(mechanisms.begin(), mechanisms.end(),
                                    [&](Mechanism m) { return m == mechanism; });
    if (!wanted) continue;

    for (const double data_bits : scenario.sweep_data_bits) {
      ScenarioParams params = scenario.params;
      params.task.data_bits = data_bits;

      SweepRow row;
      row.mechanism = mechanism;
      row.data_bits = data_bits;
      try {
        Contract items;
        double msp = 0.0;
        switch (mechanism) {
          case Mechanism::asymmetric: {
            auto result = design_contract(scenario.grid, scenario.spectrum, params);
            items = std::move(result.items);
            msp = result.msp_utility;
            break;
          }
          case Mechanism::complete_info: {
            auto result = complete_info_contract(scenario.grid, scenario.spectrum, params);
            items = std::move(result.items);
            msp = result.msp_utility;
            break;
          }
          case Mechanism::social_welfare: {
            auto result = social_welfare_contract(scenario.grid, scenario.spectrum, params);
            items = std::move(result.items);
            msp = result.msp_utility;
            break;
          }
        }
        for (const auto& item : items) {
          row.bandwidths.push_back(item.bandwidth_hz);
          row.rewards.push_back(item.reward);
        }
        row.msp_utility = msp;
        row.mrp_sum_utility = mrp_sum_utility(items, scenario.spectrum);
      } catch (const infeasible_error&) {
        row.feasible = false;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// 12 significant digits, plot-ready and diff-stable.
inline std::string format_value(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

/// Fixed-header CSV emission. Infeasible rows keep their key columns and
/// leave every value column empty.
inline void write_sweep_csv(std::ostream& out, const Scenario& scenario,
                            const std::vector<SweepRow>& rows) {
  const std::size_t n_types = scenario.spectrum.size();
  out << "scenario_hash,mechanism,D";
  for (std::size_t n = 1; n <= n_types; ++n) out << ",b_" << n;
  for (std::size_t n = 1; n <= n_types; ++n) out << ",R_" << n;
  out << ",msp_utility,mrp_sum_utility\n";

  for (const auto& row : rows) {
    out << scenario.hash << ',' << mechanism_name(row.mechanism) << ','
        << format_value(row.data_bits);
    if (row.feasible) {
      for (const double b : row.bandwidths) out << ',' << format_value(b);
      for (const double r : row.rewards) out << ',' << format_value(r);
      out << ',' << format_value(row.msp_utility) << ','
          << format_value(row.mrp_sum_utility);
    } else {
      for (std::size_t c = 0; c < 2 * n_types + 2; ++c) out << ',';
    }
    out << '\n';
  }
}

inline std::string sweep_csv(const Scenario& scenario, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_sweep_csv(out, scenario, rows);
  return out.str();
}

}  // namespace twinmig
