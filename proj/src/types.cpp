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

#include "coded_rebalance/types.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "coded_rebalance/errors.hpp"

namespace coded_rebalance {

std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }

OrderedIndex::OrderedIndex(std::vector<NodeId> components) : components_(std::move(components)) {
  for (std::size_t a = 0; a < components_.size(); ++a) {
    for (std::size_t b = a + 1; b < components_.size(); ++b) {
      if (components_[a] == components_[b]) {
        throw ParameterError("ordered index repeats node " + std::to_string(components_[a].value));
      }
    }
  }
}

OrderedIndex::OrderedIndex(std::initializer_list<std::uint64_t> ids)
    : OrderedIndex([&] {
        std::vector<NodeId> out;
        out.reserve(ids.size());
        for (auto id : ids) out.emplace_back(id);
        return out;
      }()) {}

bool OrderedIndex::contains(NodeId id) const noexcept {
  return std::find(components_.begin(), components_.end(), id) != components_.end();
}

OrderedIndex OrderedIndex::prefixed(NodeId id) const { return inserted(0, id); }

OrderedIndex OrderedIndex::inserted(std::size_t pos, NodeId id) const {
  if (pos > components_.size()) throw ParameterError("insertion position out of range");
  std::vector<NodeId> out;
  out.reserve(components_.size() + 1);
  out.insert(out.end(), components_.begin(), components_.begin() + static_cast<std::ptrdiff_t>(pos));
  out.push_back(id);
  out.insert(out.end(), components_.begin() + static_cast<std::ptrdiff_t>(pos), components_.end());
  return OrderedIndex(std::move(out));
}

OrderedIndex OrderedIndex::tail() const {
  if (components_.empty()) throw ParameterError("tail of an empty index");
  OrderedIndex out;
  out.components_.assign(components_.begin() + 1, components_.end());
  return out;
}

std::string OrderedIndex::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const OrderedIndex& index) {
  os << '[';
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i) os << ' ';
    os << index[i];
  }
  return os << ']';
}

std::uint64_t provenance_length(const Provenance& provenance) noexcept {
  std::uint64_t total = 0;
  for (const auto& r : provenance) total += r.length;
  return total;
}

void append_range(Provenance& provenance, ByteRange range) {
  if (range.length == 0) return;
  if (!provenance.empty() && provenance.back().end() == range.offset) {
    provenance.back().length += range.length;
    return;
  }
  provenance.push_back(range);
}

Provenance slice_provenance(const Provenance& provenance, std::uint64_t begin,
                            std::uint64_t length) {
  Provenance out;
  std::uint64_t cursor = 0;
  const std::uint64_t stop = begin + length;
  for (const auto& r : provenance) {
    const std::uint64_t r_begin = cursor;
    const std::uint64_t r_end = cursor + r.length;
    cursor = r_end;
    if (r_end <= begin) continue;
    if (r_begin >= stop) break;
    const std::uint64_t lo = std::max(begin, r_begin);
    const std::uint64_t hi = std::min(stop, r_end);
    append_range(out, {r.offset + (lo - r_begin), hi - lo});
  }
  if (provenance_length(out) != length) {
    throw ParameterError("provenance slice exceeds subfile length");
  }
  return out;
}

Bytes generate_file_content(const FileSpec& file) {
  std::mt19937_64 engine(file.seed);
  Bytes out(file.size_bytes);
  for (auto& b : out) b = static_cast<std::uint8_t>(engine() & 0xffu);
  return out;
}

std::vector<NodeId> ClusterDatabase::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes.size());
  for (const auto& [id, _] : nodes) ids.push_back(id);
  return ids;
}

const NodeStorage& ClusterDatabase::storage(NodeId id) const {
  auto it = nodes.find(id);
  if (it == nodes.end()) throw ParameterError("unknown node " + std::to_string(id.value));
  return it->second;
}

NodeStorage& ClusterDatabase::storage(NodeId id) {
  auto it = nodes.find(id);
  if (it == nodes.end()) throw ParameterError("unknown node " + std::to_string(id.value));
  return it->second;
}

std::uint64_t ClusterDatabase::stored_bytes(NodeId id) const {
  std::uint64_t total = 0;
  for (const auto& [_, sub] : storage(id)) total += sub.payload.size();
  return total;
}

std::size_t ClusterDatabase::index_length() const {
  if (replication < 0 || nodes.size() < static_cast<std::size_t>(replication)) {
    throw ParameterError("fewer nodes than the replication factor");
  }
  return nodes.size() - static_cast<std::size_t>(replication);
}

}  // namespace coded_rebalance
