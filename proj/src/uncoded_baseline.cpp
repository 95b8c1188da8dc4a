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

#include "coded_rebalance/uncoded_baseline.hpp"

#include "coded_rebalance/combinatorics.hpp"
#include "coded_rebalance/errors.hpp"
#include "session.hpp"

namespace coded_rebalance {

RebalanceOutcome execute_removal_uncoded(const ClusterDatabase& db, NodeId removed,
                                         BroadcastChannel& channel) {
  const RemovalPlan plan = plan_removal(db, removed);
  const std::uint64_t lost_bytes = db.stored_bytes(removed);
  const auto r = static_cast<std::int64_t>(db.replication);
  const auto nodes = static_cast<std::int64_t>(db.node_count());

  ClusterDatabase working = db;
  working.nodes.erase(removed);

  detail::Session session(channel, plan.survivors, db.generation + 1);
  for (std::size_t t = 0; t < plan.lost_indices.size(); ++t) {
    const OrderedIndex& index = plan.lost_indices[t];
    const auto holders = absent_ids(plan.survivors, index);
    if (holders.empty()) throw ProtocolViolation("no surviving holder of " + index.to_string());
    const Subfile& source = working.storage(holders.front()).at(index);
    channel.broadcast(holders.front(), t, MessageType::kPlainPart, source.payload);

    const NodeId target = plan.targets.at(index);
    auto packets = channel.receive(target, t, 1);
    Subfile copy{index, *packets.front().payload, source.provenance};
    working.storage(target).emplace(index, std::move(copy));
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
  load.theory = Rational(1);
  load.lambda_before = Rational(r, nodes);
  load.lambda_after = Rational(r, nodes - 1);
  return outcome;
}

}  // namespace coded_rebalance
