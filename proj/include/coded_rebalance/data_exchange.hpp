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
#include <vector>

#include "coded_rebalance/channel.hpp"
#include "coded_rebalance/types.hpp"

namespace coded_rebalance {

/// r nodes, r equal-length files; file m is missing only at participant m.
///
/// holdings[m][j] is participant m's own copy of file j and is empty for
/// j == m. Participants are kept in ascending id order, which fixes the
/// part keying: part B_{j,i} is slice number (position of i among the
/// participants other than j).
class ExchangeGroup {
 public:
  /// Throws ParameterError on shape violations and AlignmentError when the
  /// common file length is not divisible by r - 1.
  ExchangeGroup(std::vector<NodeId> participants,
                std::vector<std::vector<std::optional<Bytes>>> holdings);

  /// Group in which every participant holds an identical copy of the files it is not missing.
  static ExchangeGroup from_files(std::vector<NodeId> participants, std::vector<Bytes> files);

  std::size_t size() const noexcept { return participants_.size(); }
  const std::vector<NodeId>& participants() const noexcept { return participants_; }
  const std::optional<Bytes>& holding(std::size_t participant, std::size_t file) const {
    return holdings_[participant][file];
  }
  std::size_t file_length() const noexcept { return file_length_; }
  std::size_t part_length() const noexcept { return file_length_ / (size() - 1); }

  /// Slot of participant `i`'s part inside file `j` (i != j).
  static std::size_t part_slot(std::size_t file, std::size_t participant) noexcept {
    return participant < file ? participant : participant - 1;
  }

 private:
  std::vector<NodeId> participants_;
  std::vector<std::vector<std::optional<Bytes>>> holdings_;
  std::size_t file_length_ = 0;
};

/// Contiguous equal slices; slice s belongs to the s-th co-participant.
std::vector<Bytes> split_for_exchange(std::span<const std::uint8_t> file, int replication);

struct CodedPacket {
  NodeId sender;
  Bytes payload;
  RoundTag round_tag = 0;
};

/// E_i = XOR over j != i of B_{j,i}, computed from the sender's own holdings.
CodedPacket encode_packet(const ExchangeGroup& group, std::size_t sender_position,
                          RoundTag tag = 0);

struct ExchangeResult {
  /// delivered[m] is the file participant m decoded.
  std::vector<Bytes> delivered;
  std::uint64_t bytes_transmitted = 0;
};

/// One round: every participant broadcasts once (ascending id), then each
/// decodes its missing file from the other r - 1 packets. A decode that
/// disagrees with another holder's copy throws ProtocolViolation.
/// The channel session must already be open with all participants.
ExchangeResult run_exchange(const ExchangeGroup& group, BroadcastChannel& channel, RoundTag tag);

}  // namespace coded_rebalance
