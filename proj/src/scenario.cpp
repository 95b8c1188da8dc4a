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

#include "coded_rebalance/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "coded_rebalance/addition.hpp"
#include "coded_rebalance/channel.hpp"
#include "coded_rebalance/removal.hpp"
#include "coded_rebalance/socket_channel.hpp"
#include "coded_rebalance/uncoded_baseline.hpp"
#include "coded_rebalance/verification.hpp"

namespace coded_rebalance {

using nlohmann::json;

TransportKind parse_transport(const std::string& name) {
  if (name == "memory") return TransportKind::kMemory;
  if (name == "socket") return TransportKind::kSocket;
  throw ScenarioError("transport", "expected \"memory\" or \"socket\", got \"" + name + "\"");
}

std::string to_string(TransportKind kind) {
  return kind == TransportKind::kMemory ? "memory" : "socket";
}

namespace {

template <typename T>
T required(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ScenarioError(field, "missing");
  try {
    return doc.at(field).get<T>();
  } catch (const json::exception& e) {
    throw ScenarioError(field, e.what());
  }
}

// Seeded stream behind "random" removal targets.
class RemovalPicker {
 public:
  explicit RemovalPicker(std::uint64_t seed) : engine_(seed ^ 0x9e3779b97f4a7c15ull) {}

  NodeId pick(const std::vector<NodeId>& ids) { return ids[engine_() % ids.size()]; }

 private:
  std::mt19937_64 engine_;
};

std::unique_ptr<BroadcastChannel> make_channel(TransportKind kind) {
  if (kind == TransportKind::kSocket) return std::make_unique<SocketChannel>();
  return std::make_unique<MemoryChannel>();
}

}  // namespace

Scenario Scenario::from_json(const json& doc) {
  if (!doc.is_object()) throw ScenarioError("scenario", "expected a JSON object");
  Scenario s;
  s.nodes = required<std::uint64_t>(doc, "nodes");
  s.replication = required<int>(doc, "replication");
  s.file_bytes = required<std::uint64_t>(doc, "file_bytes");
  s.seed = required<std::uint64_t>(doc, "seed");
  s.max_nodes = doc.contains("max_nodes") ? required<std::uint64_t>(doc, "max_nodes") : s.nodes;
  if (doc.contains("transport")) s.transport = parse_transport(required<std::string>(doc, "transport"));
  if (doc.contains("coded")) s.coded = required<bool>(doc, "coded");

  const json ops = doc.contains("operations") ? doc.at("operations") : json::array();
  if (!ops.is_array()) throw ScenarioError("operations", "expected an array");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string field = "operations[" + std::to_string(i) + "]";
    const json& op = ops[i];
    if (!op.is_object() || !op.contains("type") || !op.at("type").is_string()) {
      throw ScenarioError(field, "expected {\"type\": \"add\"|\"remove\", ...}");
    }
    const auto type = op.at("type").get<std::string>();
    if (type == "add") {
      s.operations.emplace_back(AddOp{});
    } else if (type == "remove") {
      RemoveOp remove;
      const json node = op.contains("node") ? op.at("node") : json("random");
      if (node.is_string() && node.get<std::string>() == "random") {
      } else if (node.is_number_integer() && node.get<std::int64_t>() >= 0) {
        remove.node = NodeId(node.get<std::uint64_t>());
      } else {
        throw ScenarioError(field + ".node", "expected a node id or \"random\"");
      }
      s.operations.emplace_back(remove);
    } else {
      throw ScenarioError(field + ".type", "unknown operation \"" + type + "\"");
    }
  }
  return s;
}

json Scenario::to_json() const {
  json ops = json::array();
  for (const auto& op : operations) {
    if (std::holds_alternative<AddOp>(op)) {
      ops.push_back({{"type", "add"}});
    } else {
      const auto& remove = std::get<RemoveOp>(op);
      ops.push_back({{"type", "remove"},
                     {"node", remove.node ? json(remove.node->value) : json("random")}});
    }
  }
  return {{"nodes", nodes},         {"replication", replication},
          {"file_bytes", file_bytes}, {"seed", seed},
          {"max_nodes", max_nodes}, {"transport", to_string(transport)},
          {"operations", ops},      {"coded", coded}};
}

void Scenario::validate() const {
  if (replication < 2) throw ScenarioError("replication", "must be at least 2");
  const auto r = static_cast<std::uint64_t>(replication);
  if (nodes < r + 1) throw ScenarioError("nodes", "must be at least replication + 1");
  if (max_nodes < nodes) throw ScenarioError("max_nodes", "must be at least nodes");
  std::uint64_t multiple = 0;
  try {
    multiple = required_file_multiple(replication, max_nodes);
  } catch (const Error& e) {
    throw ScenarioError("max_nodes", e.what());
  }
  if (file_bytes == 0 || file_bytes % multiple != 0) {
    throw ScenarioError("file_bytes", "must be a positive multiple of (r-1)*P(max_nodes+1, "
                                      "max_nodes+1-r) = " + std::to_string(multiple));
  }

  std::vector<NodeId> ids;
  for (std::uint64_t k = 1; k <= nodes; ++k) ids.emplace_back(k);
  std::uint64_t next = nodes + 1;
  RemovalPicker picker(seed);
  for (std::size_t i = 0; i < operations.size(); ++i) {
    const std::string field = "operations[" + std::to_string(i) + "]";
    if (std::holds_alternative<AddOp>(operations[i])) {
      if (ids.size() + 1 > max_nodes) {
        throw ScenarioError(field, "node count would exceed max_nodes = " + std::to_string(max_nodes));
      }
      ids.emplace_back(next++);
      continue;
    }
    if (ids.size() - 1 < r + 1) {
      throw ScenarioError(field, "node count would drop below replication + 1 = " +
                                     std::to_string(r + 1));
    }
    const auto& remove = std::get<RemoveOp>(operations[i]);
    const NodeId target = remove.node ? *remove.node : picker.pick(ids);
    auto it = std::find(ids.begin(), ids.end(), target);
    if (it == ids.end()) {
      throw ScenarioError(field + ".node", "node " + std::to_string(target.value) +
                                               " is not present at this point");
    }
    ids.erase(it);
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario", "cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ScenarioError("scenario", e.what());
  }
  return Scenario::from_json(doc);
}

json ScenarioReport::to_json() const {
  json ops = json::array();
  for (const auto& op : operations) {
    ops.push_back({{"type", coded_rebalance::to_string(op.type)},
                   {"node", op.node.value},
                   {"bytes_transmitted", op.bytes_transmitted},
                   {"load_num", op.load.numerator()},
                   {"load_den", op.load.denominator()},
                   {"theory_num", op.theory.numerator()},
                   {"theory_den", op.theory.denominator()},
                   {"balanced", op.balanced},
                   {"invariant", op.invariant},
                   {"load_matches", op.load_matches},
                   {"roundtrip", op.roundtrip}});
  }
  json doc = {{"operations", ops},
              {"cumulative_bytes", cumulative_bytes},
              {"cumulative_load_num", cumulative_load.numerator()},
              {"cumulative_load_den", cumulative_load.denominator()},
              {"final_layout", final_layout},
              {"pass", pass}};
  if (error) doc["error"] = *error;
  return doc;
}

std::string ScenarioReport::to_csv() const {
  std::ostringstream os;
  os << "index,type,node,bytes_transmitted,load_num,load_den,theory_num,theory_den,balanced,"
        "invariant,roundtrip\n";
  for (std::size_t i = 0; i < operations.size(); ++i) {
    const auto& op = operations[i];
    os << i << ',' << coded_rebalance::to_string(op.type) << ',' << op.node.value << ','
       << op.bytes_transmitted << ',' << op.load.numerator() << ',' << op.load.denominator() << ','
       << op.theory.numerator() << ',' << op.theory.denominator() << ','
       << (op.balanced ? "true" : "false") << ',' << (op.invariant ? "true" : "false") << ','
       << (op.roundtrip ? "true" : "false") << '\n';
  }
  os << "total,,," << cumulative_bytes << ',' << cumulative_load.numerator() << ','
     << cumulative_load.denominator() << ",,," << (pass ? "true" : "false") << ','
     << (pass ? "true" : "false") << ',' << (pass ? "true" : "false") << '\n';
  return os.str();
}

ScenarioReport run_scenario(const Scenario& scenario, ClusterDatabase* final_state) {
  scenario.validate();
  ClusterDatabase db = init_database(scenario.nodes, scenario.replication,
                                     {scenario.file_bytes, scenario.seed}, scenario.max_nodes);
  const Bytes content = generate_file_content(db.file);
  auto channel = make_channel(scenario.transport);
  RemovalPicker picker(scenario.seed);

  ScenarioReport report;
  bool all_ok = true;
  for (const auto& op : scenario.operations) {
    OperationRecord record;
    RebalanceOutcome outcome;
    try {
      if (std::holds_alternative<AddOp>(op)) {
        record.type = OperationKind::kAddition;
        record.node = db.next_node_id;
        outcome = execute_addition(db, *channel);
      } else {
        const auto& remove = std::get<RemoveOp>(op);
        record.type = OperationKind::kRemoval;
        record.node = remove.node ? *remove.node : picker.pick(db.node_ids());
        outcome = scenario.coded ? execute_removal(db, record.node, *channel)
                                 : execute_removal_uncoded(db, record.node, *channel);
      }
    } catch (const TransportError& e) {
      report.error = "operation " + std::to_string(report.operations.size()) + ": " + e.what();
      all_ok = false;
      break;
    }
    db = std::move(outcome.database);

    record.bytes_transmitted = outcome.load.bytes_transmitted;
    record.load = outcome.load.measured;
    record.theory = outcome.load.theory;
    record.balanced = verify_balanced(db).passed();
    record.invariant = check_structural_invariance(db).passed;
    record.load_matches = compare_load(outcome.load).equal;
    try {
      record.roundtrip = reconstruct_file(db) == content;
    } catch (const ProtocolViolation&) {
      record.roundtrip = false;
    }
    all_ok = all_ok && record.balanced && record.invariant && record.load_matches && record.roundtrip;
    report.cumulative_bytes += record.bytes_transmitted;
    report.cumulative_load += record.load;
    report.operations.push_back(record);
  }
  report.final_layout = canonicalize(db).serialize();
  report.pass = all_ok;
  if (final_state) *final_state = std::move(db);
  return report;
}

json SweepReport::to_json() const {
  json entries = json::array();
  for (const auto& e : removals) {
    entries.push_back({{"node", e.node.value},
                       {"bytes_transmitted", e.bytes_transmitted},
                       {"load_num", e.load.numerator()},
                       {"load_den", e.load.denominator()},
                       {"balanced", e.balanced},
                       {"invariant", e.invariant}});
  }
  return {{"removals", entries},
          {"max_load_num", max_load.numerator()},
          {"max_load_den", max_load.denominator()},
          {"theory_num", theory.numerator()},
          {"theory_den", theory.denominator()},
          {"pass", pass}};
}

SweepReport sweep_removals(const Scenario& scenario) {
  scenario.validate();
  const ClusterDatabase db = init_database(scenario.nodes, scenario.replication,
                                           {scenario.file_bytes, scenario.seed},
                                           scenario.max_nodes);
  auto channel = make_channel(scenario.transport);
  SweepReport report;
  report.theory = scenario.coded ? Rational(1, scenario.replication - 1) : Rational(1);
  bool all_ok = true;
  for (auto k : db.node_ids()) {
    auto outcome = scenario.coded ? execute_removal(db, k, *channel)
                                  : execute_removal_uncoded(db, k, *channel);
    SweepEntry entry{k, outcome.load.bytes_transmitted, outcome.load.measured,
                     verify_balanced(outcome.database).passed(),
                     check_structural_invariance(outcome.database).passed};
    all_ok = all_ok && entry.balanced && entry.invariant;
    report.max_load = std::max(report.max_load, entry.load);
    report.removals.push_back(entry);
  }
  report.pass = all_ok && report.max_load == report.theory;
  return report;
}

json save_state(const ClusterDatabase& db) {
  json nodes = json::array();
  for (const auto& [id, storage] : db.nodes) {
    json subfiles = json::array();
    for (const auto& [index, sub] : storage) {
      json components = json::array();
      for (auto c : index.components()) components.push_back(c.value);
      json provenance = json::array();
      for (const auto& r : sub.provenance) provenance.push_back({r.offset, r.length});
      subfiles.push_back({{"index", components}, {"provenance", provenance}});
    }
    nodes.push_back({{"id", id.value}, {"subfiles", subfiles}});
  }
  return {{"replication", db.replication},
          {"file", {{"size_bytes", db.file.size_bytes}, {"seed", db.file.seed}}},
          {"generation", db.generation},
          {"next_node_id", db.next_node_id.value},
          {"nodes", nodes}};
}

ClusterDatabase load_state(const json& doc) {
  ClusterDatabase db;
  try {
    db.replication = doc.at("replication").get<int>();
    db.file.size_bytes = doc.at("file").at("size_bytes").get<std::uint64_t>();
    db.file.seed = doc.at("file").at("seed").get<std::uint64_t>();
    db.generation = doc.value("generation", std::uint64_t{0});
    const Bytes content = generate_file_content(db.file);
    std::uint64_t max_id = 0;
    for (const auto& node : doc.at("nodes")) {
      const NodeId id(node.at("id").get<std::uint64_t>());
      max_id = std::max(max_id, id.value);
      NodeStorage& storage = db.nodes[id];
      for (const auto& entry : node.at("subfiles")) {
        std::vector<NodeId> components;
        for (const auto& c : entry.at("index")) components.emplace_back(c.get<std::uint64_t>());
        Subfile sub;
        sub.index = OrderedIndex(std::move(components));
        for (const auto& r : entry.at("provenance")) {
          const ByteRange range{r.at(0).get<std::uint64_t>(), r.at(1).get<std::uint64_t>()};
          if (range.end() > content.size()) {
            throw ParameterError("provenance beyond end of file in " + sub.index.to_string());
          }
          sub.provenance.push_back(range);
          sub.payload.insert(sub.payload.end(),
                             content.begin() + static_cast<std::ptrdiff_t>(range.offset),
                             content.begin() + static_cast<std::ptrdiff_t>(range.end()));
        }
        storage.emplace(sub.index, std::move(sub));
      }
    }
    db.next_node_id = NodeId(doc.value("next_node_id", max_id + 1));
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed state: ") + e.what());
  }
  return db;
}

}  // namespace coded_rebalance
