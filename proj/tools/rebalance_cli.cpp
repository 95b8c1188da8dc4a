/*
 * Copyright 2026 The coded-rebalance Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Scenario runner for coded rebalancing of replicated databases.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coded_rebalance/database.hpp"
#include "coded_rebalance/errors.hpp"
#include "coded_rebalance/scenario.hpp"
#include "coded_rebalance/verification.hpp"

namespace cr = coded_rebalance;
using nlohmann::json;

namespace {

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw cr::Error("cannot write " + path);
  out << text;
}

int cmd_init(std::uint64_t nodes, int replication, std::uint64_t bytes, std::uint64_t seed,
             std::uint64_t max_nodes, const std::string& out) {
  const auto db = cr::init_database(nodes, replication, {bytes, seed},
                                    max_nodes == 0 ? nodes : max_nodes);
  const auto report = cr::verify_balanced(db);
  write_output(out, cr::save_state(db).dump(2) + "\n");
  std::cerr << "initialized " << nodes << " nodes, r = " << replication << ", "
            << db.storage(db.node_ids().front()).size() << " subfiles per node, "
            << (report.passed() ? "balanced" : "NOT balanced") << "\n";
  return report.passed() ? 0 : 1;
}

int cmd_run(const std::string& scenario_path, const std::string& transport,
            const std::string& format, const std::string& state_out) {
  auto scenario = cr::load_scenario(scenario_path);
  if (!transport.empty()) scenario.transport = cr::parse_transport(transport);
  cr::ClusterDatabase final_state;
  const auto report = cr::run_scenario(scenario, &final_state);
  if (format == "csv") {
    std::cout << report.to_csv();
  } else {
    std::cout << report.to_json().dump(2) << "\n";
  }
  if (!state_out.empty()) write_output(state_out, cr::save_state(final_state).dump(2) + "\n");
  if (report.error) std::cerr << "aborted: " << *report.error << "\n";
  return report.pass ? 0 : 1;
}

int cmd_sweep(const std::string& scenario_path, const std::string& transport) {
  auto scenario = cr::load_scenario(scenario_path);
  if (!transport.empty()) scenario.transport = cr::parse_transport(transport);
  const auto report = cr::sweep_removals(scenario);
  std::cout << report.to_json().dump(2) << "\n";
  return report.pass ? 0 : 1;
}

int cmd_verify(const std::string& state_path) {
  std::ifstream in(state_path);
  if (!in) throw cr::Error("cannot open " + state_path);
  json doc;
  in >> doc;
  const auto db = cr::load_state(doc);
  const auto balance = cr::verify_balanced(db);
  const auto invariance = cr::check_structural_invariance(db);
  json violations = json::array();
  for (const auto& v : balance.violations) {
    violations.push_back({{"invariant", cr::to_string(v.invariant)}, {"detail", v.detail}});
  }
  const bool pass = balance.passed() && invariance.passed;
  json out = {{"nodes", db.node_count()},
              {"replication", db.replication},
              {"balanced", balance.passed()},
              {"violations", violations},
              {"invariant", invariance.passed},
              {"pass", pass}};
  if (!invariance.passed) out["diff"] = invariance.diff;
  std::cout << out.dump(2) << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coded rebalancing simulator for r-balanced replicated databases"};
  app.require_subcommand(1);

  std::uint64_t nodes = 0, bytes = 0, seed = 0, max_nodes = 0;
  int replication = 0;
  std::string out = "-";
  auto* init = app.add_subcommand("init", "Build C(r,[K]) and write its state snapshot");
  init->add_option("--nodes", nodes, "Initial node count K")->required();
  init->add_option("--replication", replication, "Replication factor r")->required();
  init->add_option("--bytes", bytes, "File size N in bytes")->required();
  init->add_option("--seed", seed, "Seed of the file content")->required();
  init->add_option("--max-nodes", max_nodes, "Largest node count the file must support");
  init->add_option("--out", out, "State file (default stdout)");

  std::string scenario_path, transport, format = "json", state_out;
  auto* run = app.add_subcommand("run", "Execute a scenario and print its load report");
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--transport", transport, "Override the scenario transport")
      ->check(CLI::IsMember({"memory", "socket"}));
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--state-out", state_out, "Write the final state snapshot here");

  auto* sweep = app.add_subcommand("sweep-removals", "Remove every initial node in turn");
  sweep->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--transport", transport, "Override the scenario transport")
      ->check(CLI::IsMember({"memory", "socket"}));

  std::string state_path;
  auto* verify = app.add_subcommand("verify", "Check a state snapshot");
  verify->add_option("--state", state_path, "State JSON file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*init) return cmd_init(nodes, replication, bytes, seed, max_nodes, out);
    if (*run) return cmd_run(scenario_path, transport, format, state_out);
    if (*sweep) return cmd_sweep(scenario_path, transport);
    if (*verify) return cmd_verify(state_path);
  } catch (const cr::ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
