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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace coded_rebalance {

using Bytes = std::vector<std::uint8_t>;

/// Storage node label. Ids grow monotonically and are never reused.
struct NodeId {
  std::uint64_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint64_t v) : value(v) {}

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

std::ostream& operator<<(std::ostream& os, NodeId id);

/// Ordered tuple of distinct node ids labelling a subfile. A node stores the
/// subfile iff its id does not appear in the tuple; order is significant.
class OrderedIndex {
 public:
  OrderedIndex() = default;
  explicit OrderedIndex(std::vector<NodeId> components);
  OrderedIndex(std::initializer_list<std::uint64_t> ids);

  const std::vector<NodeId>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  bool empty() const noexcept { return components_.empty(); }
  NodeId operator[](std::size_t pos) const { return components_[pos]; }
  NodeId front() const { return components_.front(); }

  bool contains(NodeId id) const noexcept;

  /// [id i_1 ... i_l]
  OrderedIndex prefixed(NodeId id) const;
  /// Copy with `id` inserted before position `pos` (pos == size() appends).
  OrderedIndex inserted(std::size_t pos, NodeId id) const;
  /// [i_2 ... i_l]
  OrderedIndex tail() const;

  /// Bracketed form used throughout logs and serializations, e.g. "[1 4]".
  std::string to_string() const;

  friend auto operator<=>(const OrderedIndex&, const OrderedIndex&) = default;
  friend bool operator==(const OrderedIndex&, const OrderedIndex&) = default;

 private:
  std::vector<NodeId> components_;
};

std::ostream& operator<<(std::ostream& os, const OrderedIndex& index);

/// Half-open byte range [offset, offset + length) of the original file.
struct ByteRange {
  std::uint64_t offset = 0;
  std::uint64_t length = 0;

  std::uint64_t end() const noexcept { return offset + length; }
  friend bool operator==(const ByteRange&, const ByteRange&) = default;
};

using Provenance = std::vector<ByteRange>;

std::uint64_t provenance_length(const Provenance& provenance) noexcept;

/// Appends `range`, merging it into the last entry when contiguous.
void append_range(Provenance& provenance, ByteRange range);

/// Sub-provenance covering bytes [begin, begin + length) of the subfile.
Provenance slice_provenance(const Provenance& provenance, std::uint64_t begin,
                            std::uint64_t length);

/// Labelled payload plus the byte ranges of the original file it carries.
struct Subfile {
  OrderedIndex index;
  Bytes payload;
  Provenance provenance;

  friend bool operator==(const Subfile&, const Subfile&) = default;
};

/// The file W: N bytes of pseudorandom content regenerated from `seed`.
struct FileSpec {
  std::uint64_t size_bytes = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const FileSpec&, const FileSpec&) = default;
};

/// Deterministic content of the file (mt19937_64 stream, low byte of each draw).
Bytes generate_file_content(const FileSpec& file);

using NodeStorage = std::map<OrderedIndex, Subfile>;

/// Full state of a replicated database: per-node storage C_k and bookkeeping.
struct ClusterDatabase {
  int replication = 0;
  FileSpec file;
  std::map<NodeId, NodeStorage> nodes;
  std::uint64_t generation = 0;
  /// Smallest id never handed out; new nodes take this value.
  NodeId next_node_id{1};

  std::size_t node_count() const noexcept { return nodes.size(); }
  std::vector<NodeId> node_ids() const;
  bool has_node(NodeId id) const { return nodes.contains(id); }
  const NodeStorage& storage(NodeId id) const;
  NodeStorage& storage(NodeId id);

  /// Payload bytes held by one node.
  std::uint64_t stored_bytes(NodeId id) const;

  /// K - r, the subfile index length of the family member with this many nodes.
  std::size_t index_length() const;

  friend bool operator==(const ClusterDatabase&, const ClusterDatabase&) = default;
};

}  // namespace coded_rebalance
