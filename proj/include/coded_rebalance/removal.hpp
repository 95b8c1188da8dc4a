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
#include <map>
#include <string>
#include <vector>

#include "coded_rebalance/channel.hpp"
#include "coded_rebalance/load.hpp"
#include "coded_rebalance/types.hpp"

namespace coded_rebalance {

/// The r lost subfiles [p_1 i'] ... [p_r i'] sharing the suffix i'.
struct RemovalGroup {
  OrderedIndex suffix;
  std::vector<NodeId> participants;  // p_1 < ... < p_r
  std::vector<OrderedIndex> members;  // members[m] == suffix.prefixed(participants[m])
};

struct RemovalPlan {
  NodeId removed;
  std::vector<NodeId> survivors;
  std::vector<OrderedIndex> lost_indices;   // A_k, lexicographic
  std::vector<RemovalGroup> groups;         // lexicographic on suffix
  std::map<OrderedIndex, NodeId> targets;   // lost index -> its first component
};

/// Throws ParameterError for an unknown node and InfeasibleRemovalError when
/// fewer than r nodes would survive.
RemovalPlan plan_removal(const ClusterDatabase& db, NodeId removed);

/// For each new index i' over the survivors: [j_1 i'] ... [j_r i'] with
/// j_1 < ... < j_r the survivors absent from i', then every insertion of the
/// removed id into i', by insertion position.
std::vector<OrderedIndex> merge_constituents(const OrderedIndex& merged,
                                             const std::vector<NodeId>& survivors,
                                             NodeId removed);

/// Concatenates constituents at every surviving node into the C(r, [K-1])
/// layout. Expects node `removed` to be gone already. Missing constituents
/// throw ProtocolViolation.
ClusterDatabase merge_reindex(const ClusterDatabase& post_exchange, NodeId removed);

struct RebalanceOutcome {
  ClusterDatabase database;
  LoadReport load;
  TransmissionLog log;
};

/// Coded removal: excise node k, run one data exchange per group so that
/// every lost W_i lands at i_1, then merge and re-index. The input database
/// is left untouched; a TransportError propagates with no partial result.
RebalanceOutcome execute_removal(const ClusterDatabase& db, NodeId removed,
                                 BroadcastChannel& channel);

/// Counting identities behind the removal lower bound, measured by a per-byte scan.
struct ConverseReport {
  /// a[j] = bytes of C_k stored on exactly j surviving nodes.
  std::vector<std::uint64_t> a;
  std::uint64_t lost_bytes = 0;          // |C_k| = lambda N
  std::uint64_t sum_a = 0;               // sum_j a^j
  std::uint64_t weighted_sum = 0;        // sum_j j a^j
  std::uint64_t measured_bytes = 0;
  Rational lower_bound;                  // lambda N / (r - 1)
  Rational slack;                        // measured - lower_bound
  std::vector<std::string> violations;

  bool passed() const noexcept { return violations.empty(); }
};

/// `db` is the database before removal of `removed`.
ConverseReport converse_check(const ClusterDatabase& db, NodeId removed,
                              std::uint64_t measured_bytes);

}  // namespace coded_rebalance
