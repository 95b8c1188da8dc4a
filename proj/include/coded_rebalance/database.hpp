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
#include <span>
#include <string>
#include <vector>

#include "coded_rebalance/types.hpp"

namespace coded_rebalance {

/// Smallest file size unit for a database that may grow to `max_nodes`:
/// (r - 1) * P(max_nodes + 1, max_nodes + 1 - r).
std::uint64_t required_file_multiple(int replication, std::uint64_t max_nodes);

/// Builds C(r, [K]) over node ids 1..K: the file is cut into P(K, K-r) equal
/// subfiles labelled by S([K], K-r) and node k stores W_i iff k is not in i.
///
/// The file size must be a multiple of required_file_multiple(r, max_nodes),
/// with max_nodes defaulting to K. Throws ParameterError when r is outside
/// [2, K-1] and DivisibilityError naming the multiple otherwise.
ClusterDatabase init_database(std::uint64_t nodes, int replication, const FileSpec& file,
                              std::optional<std::uint64_t> max_nodes = std::nullopt);

/// Per-byte replication count restricted to a node subset.
/// counts[c] is the number of byte positions stored on exactly c nodes of the subset.
struct ReplicationProfile {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const noexcept;
  std::uint64_t at(std::size_t c) const noexcept { return c < counts.size() ? counts[c] : 0; }
};

/// Number of nodes of `subset` storing each byte position, one entry per position.
std::vector<std::uint32_t> per_byte_replication(const ClusterDatabase& db,
                                                std::span<const NodeId> subset);

ReplicationProfile replication_profile(const ClusterDatabase& db, std::span<const NodeId> subset);

enum class Invariant {
  kBalance,       // equal payload bytes at every node
  kReplication,   // every byte on exactly r nodes
  kPartition,     // distinct subfiles partition [0, N)
  kPlacement,     // k stores W_i iff k not in i
};

std::string to_string(Invariant invariant);

struct Violation {
  Invariant invariant;
  std::string detail;
};

struct BalanceReport {
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }
  const Violation* first() const noexcept {
    return violations.empty() ? nullptr : &violations.front();
  }
};

/// Checks the r-balanced invariants. Failures are report entries carrying a
/// witness (byte position, node id or index), never exceptions.
BalanceReport verify_balanced(const ClusterDatabase& db);

/// Writes every distinct subfile's payload back through its provenance.
/// Throws ProtocolViolation if positions are missing or covered twice.
Bytes reconstruct_file(const ClusterDatabase& db);

}  // namespace coded_rebalance
