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

#include "coded_rebalance/database.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "coded_rebalance/combinatorics.hpp"
#include "coded_rebalance/errors.hpp"

namespace coded_rebalance {

std::uint64_t required_file_multiple(int replication, std::uint64_t max_nodes) {
  if (replication < 2) throw ParameterError("replication must be at least 2");
  const auto r = static_cast<std::uint64_t>(replication);
  if (max_nodes + 1 < r) throw ParameterError("max_nodes below the replication factor");
  return (r - 1) * falling_factorial(max_nodes + 1, max_nodes + 1 - r);
}

ClusterDatabase init_database(std::uint64_t nodes, int replication, const FileSpec& file,
                              std::optional<std::uint64_t> max_nodes) {
  if (replication < 2 || static_cast<std::uint64_t>(replication) + 1 > nodes) {
    throw ParameterError("replication " + std::to_string(replication) +
                         " outside [2, K-1] for K = " + std::to_string(nodes));
  }
  if (file.size_bytes < 1) throw ParameterError("file size must be at least one byte");
  const std::uint64_t k_max = max_nodes.value_or(nodes);
  if (k_max < nodes) throw ParameterError("max_nodes is smaller than the initial node count");

  const std::uint64_t multiple = required_file_multiple(replication, k_max);
  if (file.size_bytes % multiple != 0) {
    throw DivisibilityError("file size " + std::to_string(file.size_bytes) +
                                " is not a multiple of (r-1)*P(K+1, K+1-r) = " +
                                std::to_string(multiple),
                            multiple);
  }

  std::vector<NodeId> ids;
  for (std::uint64_t k = 1; k <= nodes; ++k) ids.emplace_back(k);
  const auto indices = enumerate_ordered_indices(ids, nodes - static_cast<std::uint64_t>(replication));
  const std::uint64_t subfile_bytes = file.size_bytes / indices.size();

  const Bytes content = generate_file_content(file);

  ClusterDatabase db;
  db.replication = replication;
  db.file = file;
  db.next_node_id = NodeId(nodes + 1);
  for (auto id : ids) db.nodes[id];

  for (std::size_t t = 0; t < indices.size(); ++t) {
    Subfile sub;
    sub.index = indices[t];
    const std::uint64_t offset = t * subfile_bytes;
    sub.payload.assign(content.begin() + static_cast<std::ptrdiff_t>(offset),
                       content.begin() + static_cast<std::ptrdiff_t>(offset + subfile_bytes));
    sub.provenance.push_back({offset, subfile_bytes});
    for (auto id : ids) {
      if (!sub.index.contains(id)) db.nodes[id].emplace(sub.index, sub);
    }
  }
  return db;
}

std::uint64_t ReplicationProfile::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::vector<std::uint32_t> per_byte_replication(const ClusterDatabase& db,
                                                std::span<const NodeId> subset) {
  std::set<NodeId> seen;
  std::vector<std::uint32_t> counts(db.file.size_bytes, 0);
  for (auto id : subset) {
    if (!seen.insert(id).second) {
      throw ParameterError("node " + std::to_string(id.value) + " listed twice in subset");
    }
    for (const auto& [_, sub] : db.storage(id)) {
      for (const auto& range : sub.provenance) {
        if (range.end() > counts.size()) throw ParameterError("provenance beyond end of file");
        for (std::uint64_t n = range.offset; n < range.end(); ++n) ++counts[n];
      }
    }
  }
  return counts;
}

ReplicationProfile replication_profile(const ClusterDatabase& db, std::span<const NodeId> subset) {
  const auto per_byte = per_byte_replication(db, subset);
  ReplicationProfile profile;
  profile.counts.assign(subset.size() + 1, 0);
  for (auto c : per_byte) ++profile.counts[c];
  return profile;
}

std::string to_string(Invariant invariant) {
  switch (invariant) {
    case Invariant::kBalance: return "balance";
    case Invariant::kReplication: return "replication";
    case Invariant::kPartition: return "partition";
    case Invariant::kPlacement: return "placement";
  }
  return "unknown";
}

namespace {

// One representative per distinct index; Violation when replicas disagree.
std::map<OrderedIndex, const Subfile*> distinct_subfiles(const ClusterDatabase& db,
                                                         std::vector<Violation>* violations) {
  std::map<OrderedIndex, const Subfile*> out;
  for (const auto& [id, storage] : db.nodes) {
    for (const auto& [index, sub] : storage) {
      auto [it, inserted] = out.emplace(index, &sub);
      if (!inserted && violations && *it->second != sub) {
        violations->push_back({Invariant::kPartition,
                               "replicas of " + index.to_string() + " differ at node " +
                                   std::to_string(id.value)});
      }
    }
  }
  return out;
}

}  // namespace

BalanceReport verify_balanced(const ClusterDatabase& db) {
  BalanceReport report;
  auto& v = report.violations;
  const auto ids = db.node_ids();

  if (!ids.empty()) {
    const std::uint64_t reference = db.stored_bytes(ids.front());
    for (auto id : ids) {
      const std::uint64_t bytes = db.stored_bytes(id);
      if (bytes != reference) {
        std::ostringstream os;
        os << "node " << id << " stores " << bytes << " bytes, node " << ids.front() << " stores "
           << reference;
        v.push_back({Invariant::kBalance, os.str()});
        break;
      }
    }
  }

  const auto per_byte = per_byte_replication(db, ids);
  for (std::uint64_t n = 0; n < per_byte.size(); ++n) {
    if (per_byte[n] != static_cast<std::uint32_t>(db.replication)) {
      v.push_back({Invariant::kReplication, "byte " + std::to_string(n) + " stored on " +
                                                std::to_string(per_byte[n]) + " nodes"});
      break;
    }
  }

  const auto distinct = distinct_subfiles(db, &v);
  std::vector<std::uint32_t> coverage(db.file.size_bytes, 0);
  bool partition_ok = true;
  for (const auto& [index, sub] : distinct) {
    if (provenance_length(sub->provenance) != sub->payload.size()) {
      v.push_back({Invariant::kPartition,
                   "payload of " + index.to_string() + " does not match its provenance"});
      partition_ok = false;
      break;
    }
    for (const auto& range : sub->provenance) {
      for (std::uint64_t n = range.offset; n < range.end() && n < coverage.size(); ++n) {
        ++coverage[n];
      }
    }
  }
  if (partition_ok) {
    for (std::uint64_t n = 0; n < coverage.size(); ++n) {
      if (coverage[n] != 1) {
        v.push_back({Invariant::kPartition, "byte " + std::to_string(n) + " covered by " +
                                                std::to_string(coverage[n]) +
                                                " distinct subfiles"});
        break;
      }
    }
  }

  const bool length_ok = db.replication >= 0 && ids.size() >= static_cast<std::size_t>(db.replication);
  if (!length_ok) {
    v.push_back({Invariant::kPlacement, "fewer nodes than the replication factor"});
  } else {
    const std::size_t l = ids.size() - static_cast<std::size_t>(db.replication);
    bool placement_ok = true;
    for (const auto& [index, _] : distinct) {
      if (index.size() != l) {
        v.push_back({Invariant::kPlacement, "index " + index.to_string() + " has length " +
                                                std::to_string(index.size()) + ", expected " +
                                                std::to_string(l)});
        placement_ok = false;
        break;
      }
      for (auto c : index.components()) {
        if (!db.has_node(c)) {
          v.push_back({Invariant::kPlacement, "index " + index.to_string() +
                                                  " names absent node " + std::to_string(c.value)});
          placement_ok = false;
          break;
        }
      }
      if (!placement_ok) break;
      for (auto id : ids) {
        const bool stores = db.nodes.at(id).contains(index);
        if (stores == index.contains(id)) {
          std::ostringstream os;
          os << "node " << id << (stores ? " stores " : " lacks ") << index;
          v.push_back({Invariant::kPlacement, os.str()});
          placement_ok = false;
          break;
        }
      }
      if (!placement_ok) break;
    }
  }
  return report;
}

Bytes reconstruct_file(const ClusterDatabase& db) {
  const auto distinct = distinct_subfiles(db, nullptr);
  Bytes out(db.file.size_bytes, 0);
  std::vector<bool> written(db.file.size_bytes, false);
  for (const auto& [index, sub] : distinct) {
    if (provenance_length(sub->provenance) != sub->payload.size()) {
      throw ProtocolViolation("payload of " + index.to_string() + " does not match provenance");
    }
    std::uint64_t cursor = 0;
    for (const auto& range : sub->provenance) {
      if (range.end() > out.size()) throw ProtocolViolation("provenance beyond end of file");
      for (std::uint64_t n = 0; n < range.length; ++n) {
        if (written[range.offset + n]) {
          throw ProtocolViolation("byte " + std::to_string(range.offset + n) + " written twice");
        }
        written[range.offset + n] = true;
        out[range.offset + n] = sub->payload[cursor + n];
      }
      cursor += range.length;
    }
  }
  auto gap = std::find(written.begin(), written.end(), false);
  if (gap != written.end()) {
    throw ProtocolViolation("byte " + std::to_string(gap - written.begin()) + " missing");
  }
  return out;
}

}  // namespace coded_rebalance
