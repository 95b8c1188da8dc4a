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

#include <vector>

#include "coded_rebalance/database.hpp"
#include "coded_rebalance/types.hpp"

namespace test_support {

inline std::vector<coded_rebalance::NodeId> ids(std::initializer_list<std::uint64_t> values) {
  std::vector<coded_rebalance::NodeId> out;
  for (auto v : values) out.emplace_back(v);
  return out;
}

inline std::vector<coded_rebalance::NodeId> range_ids(std::uint64_t first, std::uint64_t last) {
  std::vector<coded_rebalance::NodeId> out;
  for (auto v = first; v <= last; ++v) out.emplace_back(v);
  return out;
}

// Smallest file size accepted by init_database for (K, r).
inline std::uint64_t min_bytes(std::uint64_t K, int r) {
  return coded_rebalance::required_file_multiple(r, K);
}

}  // namespace test_support
