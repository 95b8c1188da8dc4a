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

#include "coded_rebalance/verification.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "coded_rebalance/combinatorics.hpp"
#include "coded_rebalance/errors.hpp"

namespace coded_rebalance {

std::string CanonicalLayout::serialize() const {
  std::ostringstream os;
  for (std::size_t rank = 0; rank < nodes.size(); ++rank) {
    if (rank) os << '\n';
    os << "node=" << rank + 1 << ": ";
    for (std::size_t i = 0; i < nodes[rank].size(); ++i) {
      if (i) os << ',';
      os << nodes[rank][i];
    }
  }
  return os.str();
}

CanonicalLayout canonicalize(const ClusterDatabase& db) {
  std::map<NodeId, NodeId> rank_of;
  std::uint64_t next = 1;
  for (const auto& [id, _] : db.nodes) rank_of.emplace(id, NodeId(next++));

  CanonicalLayout layout;
  layout.nodes.reserve(db.nodes.size());
  for (const auto& [id, storage] : db.nodes) {
    std::vector<OrderedIndex> indices;
    indices.reserve(storage.size());
    for (const auto& [index, _] : storage) {
      std::vector<NodeId> relabelled;
      relabelled.reserve(index.size());
      for (auto c : index.components()) {
        auto it = rank_of.find(c);
        // ids outside the node set are kept beyond every rank so they stay visible in diffs
        relabelled.push_back(it != rank_of.end() ? it->second
                                                 : NodeId(db.nodes.size() + c.value));
      }
      indices.emplace_back(std::move(relabelled));
    }
    std::sort(indices.begin(), indices.end());
    layout.nodes.push_back(std::move(indices));
  }
  return layout;
}

CanonicalLayout family_layout(std::size_t nodes, int replication) {
  if (replication < 0 || nodes < static_cast<std::size_t>(replication)) {
    throw ParameterError("family needs at least r nodes");
  }
  std::vector<NodeId> ids;
  for (std::size_t k = 1; k <= nodes; ++k) ids.emplace_back(k);
  const auto indices = enumerate_ordered_indices(ids, nodes - static_cast<std::size_t>(replication));
  CanonicalLayout layout;
  layout.nodes.resize(nodes);
  for (const auto& index : indices) {
    for (std::size_t k = 0; k < nodes; ++k) {
      if (!index.contains(ids[k])) layout.nodes[k].push_back(index);
    }
  }
  return layout;
}

InvarianceReport check_structural_invariance(const ClusterDatabase& db) {
  InvarianceReport report;
  if (db.replication < 0 || db.node_count() < static_cast<std::size_t>(db.replication)) {
    report.diff = "fewer nodes than the replication factor";
    return report;
  }
  const CanonicalLayout actual = canonicalize(db);
  const CanonicalLayout expected = family_layout(db.node_count(), db.replication);
  for (std::size_t rank = 0; rank < expected.nodes.size(); ++rank) {
    const auto& have = actual.nodes[rank];
    const auto& want = expected.nodes[rank];
    const auto [h, w] = std::mismatch(have.begin(), have.end(), want.begin(), want.end());
    if (h == have.end() && w == want.end()) continue;
    std::ostringstream os;
    os << "node=" << rank + 1 << ": ";
    if (w == want.end() || (h != have.end() && *h < *w)) {
      os << "unexpected " << *h;
    } else {
      os << "missing " << *w;
    }
    report.diff = os.str();
    return report;
  }
  report.passed = true;
  return report;
}

LoadComparison compare_load(const LoadReport& report) {
  LoadComparison out;
  out.equal = report.measured == report.theory;
  out.detail = to_string(report.operation) + ": measured " + to_string(report.measured) +
               (out.equal ? " == " : " != ") + "theory " + to_string(report.theory);
  return out;
}

LoadComparison compare_load_pair(const LoadReport& removal, const LoadReport& addition,
                                 int replication) {
  LoadComparison out;
  const Rational sum = removal.measured + addition.measured;
  const Rational optimum = Rational(1, replication - 1) + Rational(1);
  out.equal = sum == optimum;
  out.detail = "removal + addition = " + to_string(sum) + (out.equal ? " == " : " != ") +
               "1/(r-1) + 1 = " + to_string(optimum);
  return out;
}

}  // namespace coded_rebalance
