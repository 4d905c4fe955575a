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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twinmig/experiments.hpp"
#include "twinmig/scenario.hpp"

namespace {

// Exit codes: 0 success, 1 validation error, 2 no feasible bandwidth.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;

std::vector<twinmig::Mechanism> parse_mechanism_list(const std::string& arg) {
  std::vector<twinmig::Mechanism> mechanisms;
  std::istringstream stream(arg);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto mechanism = twinmig::parse_mechanism(token);
    if (!mechanism)
      throw twinmig::validation_error(
          "mechanisms: unknown mechanism '" + token +
          "' (expected asymmetric, complete or social)");
    mechanisms.push_back(*mechanism);
  }
  if (mechanisms.empty())
    throw twinmig::validation_error("mechanisms: the list must not be empty");
  return mechanisms;
}

void print_contract(const twinmig::Scenario& scenario, const twinmig::Contract& items,
                    double msp_utility) {
  std::printf("scenario %s: %zu types, population %d\n", scenario.hash.c_str(),
              scenario.spectrum.size(), scenario.spectrum.population);
  std::printf("%-6s %-14s %-16s %-16s %-16s\n", "type", "theta", "bandwidth_hz",
              "reward", "mrp_utility");
  for (std::size_t n = 0; n < items.size(); ++n) {
    const double theta = scenario.spectrum.types[n].theta;
    std::printf("%-6zu %-14.6g %-16.10g %-16.10g %-16.10g\n", n + 1, theta,
                items[n].bandwidth_hz, items[n].reward,
                twinmig::mrp_utility(items[n], theta));
  }
  std::printf("msp_expected_utility %.10g\n", msp_utility);
  std::printf("mrp_sum_utility      %.10g\n",
              twinmig::mrp_sum_utility(items, scenario.spectrum));
}

int run_design(const twinmig::Scenario& scenario) {
  const auto result =
      twinmig::design_contract(scenario.grid, scenario.spectrum, scenario.params);
  print_contract(scenario, result.items, result.msp_utility);
  return kExitOk;
}

int run_feasibility(const twinmig::Scenario& scenario) {
  const auto matrix = twinmig::run_feasibility_matrix(scenario);
  const std::size_t n_types = scenario.spectrum.size();

  std::printf("scenario %s: utility of type n (row) under item j (column)\n",
              scenario.hash.c_str());
  for (std::size_t n = 0; n < n_types; ++n) {
    std::printf("type %zu |", n + 1);
    for (std::size_t j = 0; j < n_types; ++j)
      std::printf(" %14.6g", matrix.utility[n][j]);
    std::printf("  IR %s  IC %s\n", matrix.ir_ok[n] ? "ok" : "VIOLATED",
                matrix.ic_ok[n] ? "ok" : "VIOLATED");
  }
  std::printf("verdict: %s\n", matrix.all_ok() ? "feasible" : "INFEASIBLE");
  std::printf("msp_expected_utility %.10g\n", matrix.msp_utility);
  return kExitOk;
}

int run_sweep(const twinmig::Scenario& scenario, const std::string& out_path,
              const std::string& mechanisms_arg) {
  const auto mechanisms = parse_mechanism_list(mechanisms_arg);
  const auto rows = twinmig::sweep_data_size(scenario, mechanisms);

  std::ofstream out(out_path);
  if (!out)
    throw twinmig::validation_error("sweep: cannot open output file '" + out_path + "'");
  twinmig::write_sweep_csv(out, scenario, rows);

  std::size_t infeasible = 0;
  for (const auto& row : rows)
    if (!row.feasible) ++infeasible;
  std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
  if (infeasible > 0)
    std::fprintf(stderr, "warning: %zu rows had no feasible bandwidth\n", infeasible);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bandwidth-reward contract designer for twin-migration tasks"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string mechanisms_arg = "asymmetric,complete,social";

  auto* design = app.add_subcommand("design", "Design the contract menu and print it");
  design->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();

  auto* feasibility = app.add_subcommand(
      "feasibility", "Print the cross-utility matrix and IR/IC verdicts");
  feasibility->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();

  auto* sweep = app.add_subcommand(
      "sweep", "Run the payload-size sweep and emit a CSV of the results");
  sweep->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
  sweep->add_option("--out", out_path, "Output CSV path")->required();
  sweep->add_option("--mechanisms", mechanisms_arg,
                    "Comma-separated subset of: asymmetric, complete, social");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const auto scenario = twinmig::load_scenario(scenario_path);
    if (design->parsed()) return run_design(scenario);
    if (feasibility->parsed()) return run_feasibility(scenario);
    return run_sweep(scenario, out_path, mechanisms_arg);
  } catch (const twinmig::infeasible_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInfeasible;
  } catch (const twinmig::validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
}
