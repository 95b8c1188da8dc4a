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

#include <optional>
#include <string>
#include <vector>

#include "coded_rebalance/load.hpp"
#include "coded_rebalance/types.hpp"

namespace coded_rebalance {

/// Node -> index set layout after order-preserving relabelling onto 1..K.
struct CanonicalLayout {
  std::vector<std::vector<OrderedIndex>> nodes;  // nodes[rank - 1], indices sorted

  /// One line per node: "node=<rank>: [a b],[c d],..." joined by '\n'.
  std::string serialize() const;

  friend bool operator==(const CanonicalLayout&, const CanonicalLayout&) = default;
};

/// Payloads are ignored.
CanonicalLayout canonicalize(const ClusterDatabase& db);

/// Layout of C(r, [K]) over ids 1..K, computed without building payloads.
CanonicalLayout family_layout(std::size_t nodes, int replication);

struct InvarianceReport {
  bool passed = false;
  std::string diff;  // first mismatching (node, index), empty on pass
};

InvarianceReport check_structural_invariance(const ClusterDatabase& db);

struct LoadComparison {
  bool equal = false;
  std::string detail;
};

LoadComparison compare_load(const LoadReport& report);

/// Sum of a removal and an addition load against 1/(r-1) + 1.
LoadComparison compare_load_pair(const LoadReport& removal, const LoadReport& addition,
                                 int replication);

}  // namespace coded_rebalance
