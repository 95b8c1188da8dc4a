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

#include <functional>
#include <vector>

#include "coded_rebalance/channel.hpp"
#include "coded_rebalance/removal.hpp"
#include "coded_rebalance/types.hpp"

namespace coded_rebalance {

/// Labels for the K+1 equal parts of W_i when `new_id` joins: first [j i] for
/// the r holders j_1 < ... < j_r, then `new_id` inserted at every position of i.
struct SplitRelabeling {
  OrderedIndex original;
  std::vector<OrderedIndex> labels;
  std::vector<Subfile> parts;  // parts[p].index == labels[p]
};

/// `holders` are the current node ids; throws AlignmentError when the
/// payload does not split into holders.size() + 1 equal parts.
SplitRelabeling split_and_relabel(const Subfile& subfile, const std::vector<NodeId>& holders,
                                  NodeId new_id);

/// Called after every observable step of an addition with the intermediate state.
using AdditionObserver = std::function<void(const ClusterDatabase&)>;

/// Adds one empty node with id db.next_node_id. Each old node k, in ascending
/// order, splits every subfile it holds, sends the part [k i] to the new node
/// and deletes it locally once the new node has stored it.
RebalanceOutcome execute_addition(const ClusterDatabase& db, BroadcastChannel& channel,
                                  const AdditionObserver& observer = {});

}  // namespace coded_rebalance
