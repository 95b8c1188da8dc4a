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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "coded_rebalance/database.hpp"
#include "coded_rebalance/errors.hpp"
#include "coded_rebalance/load.hpp"
#include "coded_rebalance/types.hpp"

namespace coded_rebalance {

/// Scenario validation failure naming the offending field.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string field, const std::string& reason)
      : Error(field + ": " + reason), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class TransportKind { kMemory, kSocket };

TransportKind parse_transport(const std::string& name);
std::string to_string(TransportKind kind);

struct AddOp {};
struct RemoveOp {
  std::optional<NodeId> node;  // nullopt: pick from the scenario's seeded stream
};
using ScenarioOp = std::variant<AddOp, RemoveOp>;

struct Scenario {
  std::uint64_t nodes = 0;
  int replication = 0;
  std::uint64_t file_bytes = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_nodes = 0;
  TransportKind transport = TransportKind::kMemory;
  std::vector<ScenarioOp> operations;
  bool coded = true;

  /// Throws ScenarioError when N is not a valid multiple or an intermediate
  /// node count leaves [r + 1, max_nodes].
  void validate() const;

  static Scenario from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};

Scenario load_scenario(const std::string& path);

struct OperationRecord {
  OperationKind type = OperationKind::kRemoval;
  NodeId node;
  std::uint64_t bytes_transmitted = 0;
  Rational load;
  Rational theory;
  bool balanced = false;
  bool invariant = false;
  bool load_matches = false;
  bool roundtrip = false;
};

struct ScenarioReport {
  std::vector<OperationRecord> operations;
  std::uint64_t cumulative_bytes = 0;
  Rational cumulative_load;
  std::string final_layout;
  std::optional<std::string> error;
  bool pass = false;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// Executes the operations in order, checking balance, structural invariance
/// and load after each. A transport error stops the run; the report then
/// carries the error and the layout after the last completed operation.
ScenarioReport run_scenario(const Scenario& scenario, ClusterDatabase* final_state = nullptr);

struct SweepEntry {
  NodeId node;
  std::uint64_t bytes_transmitted = 0;
  Rational load;
  bool balanced = false;
  bool invariant = false;
};

struct SweepReport {
  std::vector<SweepEntry> removals;
  Rational max_load;
  Rational theory;
  bool pass = false;

  nlohmann::json to_json() const;
};

/// Removes every node of the scenario's initial database in turn (each from
/// a fresh copy); the maximum is the removal load over all choices of k.
SweepReport sweep_removals(const Scenario& scenario);

/// Snapshot of the layout and provenance; payloads are regenerated from the seed on load.
nlohmann::json save_state(const ClusterDatabase& db);
ClusterDatabase load_state(const nlohmann::json& doc);

}  // namespace coded_rebalance
