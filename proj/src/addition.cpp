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

#include "coded_rebalance/addition.hpp"

#include <string>

#include "coded_rebalance/combinatorics.hpp"
#include "coded_rebalance/errors.hpp"
#include "session.hpp"

namespace coded_rebalance {

SplitRelabeling split_and_relabel(const Subfile& subfile, const std::vector<NodeId>& holders,
                                  NodeId new_id) {
  SplitRelabeling out;
  out.original = subfile.index;
  for (auto j : absent_ids(holders, subfile.index)) out.labels.push_back(subfile.index.prefixed(j));
  for (std::size_t pos = 0; pos <= subfile.index.size(); ++pos) {
    out.labels.push_back(subfile.index.inserted(pos, new_id));
  }

  const std::size_t count = holders.size() + 1;
  if (out.labels.size() != count) {
    throw ParameterError("index " + subfile.index.to_string() + " does not fit " +
                         std::to_string(holders.size()) + " nodes");
  }
  if (subfile.payload.size() % count != 0) {
    throw AlignmentError("subfile " + subfile.index.to_string() + " of " +
                         std::to_string(subfile.payload.size()) + " bytes cannot be split into " +
                         std::to_string(count) + " parts");
  }
  const std::size_t part_length = subfile.payload.size() / count;
  out.parts.reserve(count);
  for (std::size_t p = 0; p < count; ++p) {
    Subfile part;
    part.index = out.labels[p];
    const auto begin = subfile.payload.begin() + static_cast<std::ptrdiff_t>(p * part_length);
    part.payload.assign(begin, begin + static_cast<std::ptrdiff_t>(part_length));
    part.provenance = slice_provenance(subfile.provenance, p * part_length, part_length);
    out.parts.push_back(std::move(part));
  }
  return out;
}

RebalanceOutcome execute_addition(const ClusterDatabase& db, BroadcastChannel& channel,
                                  const AdditionObserver& observer) {
  const std::vector<NodeId> old_ids = db.node_ids();
  const NodeId new_id = db.next_node_id;
  if (db.has_node(new_id)) {
    throw ParameterError("next node id " + std::to_string(new_id.value) + " already in use");
  }
  const auto r = static_cast<std::int64_t>(db.replication);
  const auto nodes = static_cast<std::int64_t>(old_ids.size());
  // every index must have length K - r before the split
  (void)db.index_length();

  ClusterDatabase working = db;
  working.nodes[new_id];
  working.next_node_id = NodeId(new_id.value + 1);
  auto notify = [&] {
    if (observer) observer(working);
  };

  std::vector<NodeId> participants = old_ids;
  participants.push_back(new_id);
  detail::Session session(channel, participants, db.generation + 1);

  for (auto k : old_ids) {
    // the new node knows k's schedule from the structure alone: one part per
    // index without k, in lexicographic order, FIFO on k's round
    std::vector<OrderedIndex> held;
    for (const auto& [index, _] : db.storage(k)) held.push_back(index);

    for (const auto& index : held) {
      NodeStorage& local = working.storage(k);
      auto node = local.extract(index);
      SplitRelabeling split = split_and_relabel(node.mapped(), old_ids, new_id);
      const OrderedIndex transfer = index.prefixed(k);
      for (auto& part : split.parts) local.emplace(part.index, std::move(part));
      notify();

      channel.broadcast(k, k.value, MessageType::kPlainPart, local.at(transfer).payload);
      auto packets = channel.receive(new_id, k.value, 1);
      Subfile received{transfer, *packets.front().payload, local.at(transfer).provenance};
      working.storage(new_id).emplace(transfer, std::move(received));
      notify();

      working.storage(k).erase(transfer);
      notify();
    }
  }
  TransmissionLog log = session.finish();

  working.generation = db.generation + 1;
  RebalanceOutcome outcome{std::move(working), {}, std::move(log)};

  LoadReport& load = outcome.load;
  load.operation = OperationKind::kAddition;
  load.bytes_transmitted = outcome.log.total_bytes();
  load.normalizer_bytes = outcome.database.stored_bytes(new_id);
  load.measured = load.normalizer_bytes == 0
                      ? Rational(0)
                      : Rational(static_cast<std::int64_t>(load.bytes_transmitted),
                                 static_cast<std::int64_t>(load.normalizer_bytes));
  load.theory = Rational(1);
  load.lambda_before = Rational(r, nodes);
  load.lambda_after = Rational(r, nodes + 1);
  return outcome;
}

}  // namespace coded_rebalance
