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

#include "coded_rebalance/data_exchange.hpp"

#include <algorithm>
#include <string>

#include "coded_rebalance/errors.hpp"

namespace coded_rebalance {

namespace {

std::span<const std::uint8_t> part_of(const Bytes& file, std::size_t slot, std::size_t part_length) {
  return std::span<const std::uint8_t>(file).subspan(slot * part_length, part_length);
}

void xor_into(Bytes& acc, std::span<const std::uint8_t> term) {
  for (std::size_t b = 0; b < acc.size(); ++b) acc[b] ^= term[b];
}

}  // namespace

ExchangeGroup::ExchangeGroup(std::vector<NodeId> participants,
                             std::vector<std::vector<std::optional<Bytes>>> holdings)
    : participants_(std::move(participants)), holdings_(std::move(holdings)) {
  const std::size_t r = participants_.size();
  if (r < 2) throw ParameterError("an exchange group needs at least two participants");
  if (!std::is_sorted(participants_.begin(), participants_.end()) ||
      std::adjacent_find(participants_.begin(), participants_.end()) != participants_.end()) {
    throw ParameterError("exchange participants must be distinct and ascending");
  }
  if (holdings_.size() != r) throw ParameterError("holdings must list every participant");

  bool have_length = false;
  for (std::size_t m = 0; m < r; ++m) {
    if (holdings_[m].size() != r) throw ParameterError("holdings must list every file");
    for (std::size_t j = 0; j < r; ++j) {
      const auto& held = holdings_[m][j];
      if (j == m) {
        if (held) {
          throw ParameterError("participant " + std::to_string(participants_[m].value) +
                               " already holds its missing file");
        }
        continue;
      }
      if (!held) {
        throw ParameterError("participant " + std::to_string(participants_[m].value) +
                             " lacks file " + std::to_string(j));
      }
      if (!have_length) {
        file_length_ = held->size();
        have_length = true;
      } else if (held->size() != file_length_) {
        throw ParameterError("exchange files differ in length");
      }
    }
  }
  if (file_length_ % (r - 1) != 0) {
    throw AlignmentError("file length " + std::to_string(file_length_) +
                         " is not divisible by r-1 = " + std::to_string(r - 1));
  }
}

ExchangeGroup ExchangeGroup::from_files(std::vector<NodeId> participants, std::vector<Bytes> files) {
  const std::size_t r = participants.size();
  if (files.size() != r) throw ParameterError("need exactly one file per participant");
  std::vector<std::vector<std::optional<Bytes>>> holdings(r, std::vector<std::optional<Bytes>>(r));
  for (std::size_t m = 0; m < r; ++m) {
    for (std::size_t j = 0; j < r; ++j) {
      if (j != m) holdings[m][j] = files[j];
    }
  }
  return ExchangeGroup(std::move(participants), std::move(holdings));
}

std::vector<Bytes> split_for_exchange(std::span<const std::uint8_t> file, int replication) {
  if (replication < 2) throw ParameterError("replication must be at least 2");
  const auto parts = static_cast<std::size_t>(replication - 1);
  if (file.size() % parts != 0) {
    throw AlignmentError("length " + std::to_string(file.size()) + " not divisible by " +
                         std::to_string(parts));
  }
  const std::size_t part_length = file.size() / parts;
  std::vector<Bytes> out;
  out.reserve(parts);
  for (std::size_t s = 0; s < parts; ++s) {
    auto slice = file.subspan(s * part_length, part_length);
    out.emplace_back(slice.begin(), slice.end());
  }
  return out;
}

CodedPacket encode_packet(const ExchangeGroup& group, std::size_t sender_position, RoundTag tag) {
  if (sender_position >= group.size()) {
    throw ParameterError("sender position " + std::to_string(sender_position) + " out of range");
  }
  CodedPacket packet;
  packet.sender = group.participants()[sender_position];
  packet.round_tag = tag;
  packet.payload.assign(group.part_length(), 0);
  for (std::size_t j = 0; j < group.size(); ++j) {
    if (j == sender_position) continue;
    xor_into(packet.payload, part_of(*group.holding(sender_position, j),
                                     ExchangeGroup::part_slot(j, sender_position),
                                     group.part_length()));
  }
  return packet;
}

ExchangeResult run_exchange(const ExchangeGroup& group, BroadcastChannel& channel, RoundTag tag) {
  const std::size_t r = group.size();
  const std::size_t part_length = group.part_length();
  const auto& ids = group.participants();
  const std::uint64_t meter_before = channel.meter();

  for (std::size_t i = 0; i < r; ++i) {
    const auto packet = encode_packet(group, i, tag);
    channel.broadcast(packet.sender, tag, MessageType::kCodedPacket, packet.payload);
  }

  ExchangeResult result;
  result.delivered.resize(r);
  for (std::size_t m = 0; m < r; ++m) {
    const auto packets = channel.receive(ids[m], tag, r - 1);
    Bytes decoded(group.file_length(), 0);
    std::vector<bool> seen(r, false);
    for (const auto& packet : packets) {
      const auto pos = std::lower_bound(ids.begin(), ids.end(), packet.sender) - ids.begin();
      const auto i = static_cast<std::size_t>(pos);
      if (i >= r || ids[i] != packet.sender || i == m || seen[i]) {
        throw ProtocolViolation("unexpected packet from node " +
                                std::to_string(packet.sender.value) + " in round " +
                                std::to_string(tag));
      }
      if (packet.size() != part_length) {
        throw ProtocolViolation("coded packet of " + std::to_string(packet.size()) +
                                " bytes, expected " + std::to_string(part_length));
      }
      seen[i] = true;
      // B_{m,i} = E_i xor (xor over j != m, i of B_{j,i})
      Bytes part(packet.payload->begin(), packet.payload->end());
      for (std::size_t j = 0; j < r; ++j) {
        if (j == m || j == i) continue;
        xor_into(part, part_of(*group.holding(m, j), ExchangeGroup::part_slot(j, i), part_length));
      }
      std::copy(part.begin(), part.end(),
                decoded.begin() +
                    static_cast<std::ptrdiff_t>(ExchangeGroup::part_slot(m, i) * part_length));
    }
    const std::size_t witness = m == 0 ? 1 : 0;
    if (decoded != *group.holding(witness, m)) {
      throw ProtocolViolation("participant " + std::to_string(ids[m].value) +
                              " decoded a file that differs from node " +
                              std::to_string(ids[witness].value) + "'s copy");
    }
    result.delivered[m] = std::move(decoded);
  }
  result.bytes_transmitted = channel.meter() - meter_before;
  return result;
}

}  // namespace coded_rebalance
