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

#include "coded_rebalance/removal.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "coded_rebalance/combinatorics.hpp"
#include "coded_rebalance/data_exchange.hpp"
#include "coded_rebalance/database.hpp"
#include "coded_rebalance/errors.hpp"
#include "session.hpp"

namespace coded_rebalance {

RemovalPlan plan_removal(const ClusterDatabase& db, NodeId removed) {
  const NodeStorage& lost = db.storage(removed);
  const std::size_t nodes = db.node_count();
  const auto r = static_cast<std::size_t>(db.replication);
  if (nodes - 1 < r) {
    throw InfeasibleRemovalError("removing a node from " + std::to_string(nodes) +
                                 " leaves fewer than r = " + std::to_string(r) + " nodes");
  }

  RemovalPlan plan;
  plan.removed = removed;
  for (auto id : db.node_ids()) {
    if (id != removed) plan.survivors.push_back(id);
  }
  for (const auto& [index, _] : lost) plan.lost_indices.push_back(index);

  for (const auto& suffix : enumerate_ordered_indices(plan.survivors, nodes - 1 - r)) {
    RemovalGroup group;
    group.suffix = suffix;
    group.participants = absent_ids(plan.survivors, suffix);
    for (auto p : group.participants) {
      auto member = suffix.prefixed(p);
      if (!lost.contains(member)) {
        throw ProtocolViolation("node " + std::to_string(removed.value) + " does not hold " +
                                member.to_string() + "; database is not in the family");
      }
      plan.targets.emplace(member, p);
      group.members.push_back(std::move(member));
    }
    plan.groups.push_back(std::move(group));
  }
  if (plan.targets.size() != plan.lost_indices.size()) {
    throw ProtocolViolation("groups do not partition the lost subfiles of node " +
                            std::to_string(removed.value));
  }
  return plan;
}

std::vector<OrderedIndex> merge_constituents(const OrderedIndex& merged,
                                             const std::vector<NodeId>& survivors,
                                             NodeId removed) {
  std::vector<OrderedIndex> out;
  for (auto j : absent_ids(survivors, merged)) out.push_back(merged.prefixed(j));
  for (std::size_t pos = 0; pos <= merged.size(); ++pos) out.push_back(merged.inserted(pos, removed));
  return out;
}

ClusterDatabase merge_reindex(const ClusterDatabase& post_exchange, NodeId removed) {
  if (post_exchange.has_node(removed)) {
    throw ParameterError("node " + std::to_string(removed.value) + " has not been excised");
  }
  const auto survivors = post_exchange.node_ids();
  const auto r = static_cast<std::size_t>(post_exchange.replication);
  if (survivors.size() < r) throw InfeasibleRemovalError("fewer survivors than r");
  const auto merged_indices = enumerate_ordered_indices(survivors, survivors.size() - r);

  ClusterDatabase out;
  out.replication = post_exchange.replication;
  out.file = post_exchange.file;
  out.generation = post_exchange.generation;
  out.next_node_id = post_exchange.next_node_id;

  for (auto m : survivors) {
    const NodeStorage& held = post_exchange.storage(m);
    NodeStorage& merged_storage = out.nodes[m];
    for (const auto& merged : merged_indices) {
      if (merged.contains(m)) continue;
      Subfile sub;
      sub.index = merged;
      for (const auto& part_index : merge_constituents(merged, survivors, removed)) {
        auto it = held.find(part_index);
        if (it == held.end()) {
          throw ProtocolViolation("node " + std::to_string(m.value) + " lacks " +
                                  part_index.to_string() + " needed for " + merged.to_string());
        }
        sub.payload.insert(sub.payload.end(), it->second.payload.begin(), it->second.payload.end());
        for (const auto& range : it->second.provenance) append_range(sub.provenance, range);
      }
      merged_storage.emplace(merged, std::move(sub));
    }
  }
  return out;
}

RebalanceOutcome execute_removal(const ClusterDatabase& db, NodeId removed,
                                 BroadcastChannel& channel) {
  const RemovalPlan plan = plan_removal(db, removed);
  const std::uint64_t lost_bytes = db.stored_bytes(removed);
  const auto r = static_cast<std::int64_t>(db.replication);
  const auto nodes = static_cast<std::int64_t>(db.node_count());

  ClusterDatabase working = db;
  working.nodes.erase(removed);

  detail::Session session(channel, plan.survivors, db.generation + 1);
  for (std::size_t t = 0; t < plan.groups.size(); ++t) {
    const RemovalGroup& group = plan.groups[t];
    const std::size_t size = group.participants.size();
    std::vector<std::vector<std::optional<Bytes>>> holdings(
        size, std::vector<std::optional<Bytes>>(size));
    for (std::size_t m = 0; m < size; ++m) {
      const NodeStorage& local = working.storage(group.participants[m]);
      for (std::size_t j = 0; j < size; ++j) {
        if (j == m) continue;
        auto it = local.find(group.members[j]);
        if (it == local.end()) {
          throw ProtocolViolation("node " + std::to_string(group.participants[m].value) +
                                  " lacks " + group.members[j].to_string());
        }
        holdings[m][j] = it->second.payload;
      }
    }
    ExchangeGroup exchange(group.participants, std::move(holdings));
    ExchangeResult result = run_exchange(exchange, channel, t);

    for (std::size_t m = 0; m < size; ++m) {
      // provenance is structural metadata, known to every holder
      const NodeId holder = group.participants[m == 0 ? 1 : 0];
      Subfile delivered;
      delivered.index = group.members[m];
      delivered.payload = std::move(result.delivered[m]);
      delivered.provenance = working.storage(holder).at(group.members[m]).provenance;
      working.storage(group.participants[m]).emplace(delivered.index, std::move(delivered));
    }
  }
  TransmissionLog log = session.finish();

  RebalanceOutcome outcome{merge_reindex(working, removed), {}, std::move(log)};
  outcome.database.generation = db.generation + 1;

  LoadReport& load = outcome.load;
  load.operation = OperationKind::kRemoval;
  load.bytes_transmitted = outcome.log.total_bytes();
  load.normalizer_bytes = lost_bytes;
  load.measured = Rational(static_cast<std::int64_t>(load.bytes_transmitted),
                           static_cast<std::int64_t>(lost_bytes));
  load.theory = Rational(1, r - 1);
  load.lambda_before = Rational(r, nodes);
  load.lambda_after = Rational(r, nodes - 1);
  return outcome;
}

ConverseReport converse_check(const ClusterDatabase& db, NodeId removed,
                              std::uint64_t measured_bytes) {
  ConverseReport report;
  const NodeId only_removed[] = {removed};
  const auto at_removed = per_byte_replication(db, only_removed);
  std::vector<NodeId> survivors;
  for (auto id : db.node_ids()) {
    if (id != removed) survivors.push_back(id);
  }
  const auto at_survivors = per_byte_replication(db, survivors);

  report.a.assign(survivors.size() + 1, 0);
  for (std::size_t n = 0; n < at_removed.size(); ++n) {
    if (at_removed[n] == 0) continue;
    ++report.lost_bytes;
    ++report.a[at_survivors[n]];
  }
  for (std::size_t j = 1; j < report.a.size(); ++j) {
    report.sum_a += report.a[j];
    report.weighted_sum += j * report.a[j];
  }

  const auto r = static_cast<std::uint64_t>(db.replication);
  const auto nodes = static_cast<std::uint64_t>(db.node_count());
  const std::uint64_t n_bytes = db.file.size_bytes;
  auto fail = [&](const std::string& text) { report.violations.push_back(text); };

  if (report.lost_bytes * nodes != r * n_bytes) {
    std::ostringstream os;
    os << "|C_k| = " << report.lost_bytes << " differs from lambda N = " << r << "*" << n_bytes
       << "/" << nodes;
    fail(os.str());
  }
  if (report.a[0] != 0) {
    fail(std::to_string(report.a[0]) + " bytes of the removed node have no surviving copy");
  }
  if (report.sum_a != report.lost_bytes) {
    fail("sum_j a^j = " + std::to_string(report.sum_a) + " but |C_k| = " +
         std::to_string(report.lost_bytes));
  }
  if (report.weighted_sum != (r - 1) * report.lost_bytes) {
    fail("sum_j j a^j = " + std::to_string(report.weighted_sum) + " but (r-1)|C_k| = " +
         std::to_string((r - 1) * report.lost_bytes));
  }

  report.measured_bytes = measured_bytes;
  report.lower_bound = Rational(static_cast<std::int64_t>(report.lost_bytes),
                                static_cast<std::int64_t>(r - 1));
  report.slack = Rational(static_cast<std::int64_t>(measured_bytes)) - report.lower_bound;
  if (report.slack < 0) {
    fail("measured " + std::to_string(measured_bytes) + " bytes is below the bound " +
         to_string(report.lower_bound));
  }
  return report;
}

}  // namespace coded_rebalance
