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
#include <span>
#include <vector>

#include "coded_rebalance/types.hpp"

namespace coded_rebalance {

/// P(K, l) = K (K-1) ... (K-l+1). Throws DomainError for l > K or on uint64 overflow.
std::uint64_t falling_factorial(std::uint64_t k, std::uint64_t l);

/// All P(|ids|, l) ordered tuples of l distinct elements of `ids`, in
/// lexicographic order of their component sequences. Duplicates in `ids`
/// are ignored. l == 0 yields the single empty tuple.
std::vector<OrderedIndex> enumerate_ordered_indices(std::span<const NodeId> ids, std::size_t l);

/// Ids of `ids` that do not appear in `index`, ascending.
std::vector<NodeId> absent_ids(std::span<const NodeId> ids, const OrderedIndex& index);

}  // namespace coded_rebalance
