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

#include "coded_rebalance/combinatorics.hpp"

#include <algorithm>
#include <string>

#include "coded_rebalance/errors.hpp"

namespace coded_rebalance {

std::uint64_t falling_factorial(std::uint64_t k, std::uint64_t l) {
  if (l > k) {
    throw DomainError("P(" + std::to_string(k) + ", " + std::to_string(l) + "): l exceeds K");
  }
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < l; ++i) {
    if (__builtin_mul_overflow(result, k - i, &result)) {
      throw DomainError("P(" + std::to_string(k) + ", " + std::to_string(l) +
                        ") overflows 64 bits");
    }
  }
  return result;
}

namespace {

void extend(const std::vector<NodeId>& pool, std::size_t l, std::vector<NodeId>& prefix,
            std::vector<bool>& used, std::vector<OrderedIndex>& out) {
  if (prefix.size() == l) {
    out.emplace_back(prefix);
    return;
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    prefix.push_back(pool[i]);
    extend(pool, l, prefix, used, out);
    prefix.pop_back();
    used[i] = false;
  }
}

}  // namespace

std::vector<OrderedIndex> enumerate_ordered_indices(std::span<const NodeId> ids, std::size_t l) {
  std::vector<NodeId> pool(ids.begin(), ids.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (l > pool.size()) {
    throw DomainError("cannot pick " + std::to_string(l) + " distinct ids from " +
                      std::to_string(pool.size()));
  }
  std::vector<OrderedIndex> out;
  out.reserve(falling_factorial(pool.size(), l));
  std::vector<NodeId> prefix;
  prefix.reserve(l);
  std::vector<bool> used(pool.size(), false);
  extend(pool, l, prefix, used, out);
  return out;
}

std::vector<NodeId> absent_ids(std::span<const NodeId> ids, const OrderedIndex& index) {
  std::vector<NodeId> out;
  for (auto id : ids) {
    if (!index.contains(id)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coded_rebalance
