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

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "coded_rebalance/channel.hpp"

namespace coded_rebalance::wire {

// Frame: u32 BE payload length | u8 type | u64 BE sender | u64 BE round tag | payload
inline constexpr std::size_t kHeaderSize = 4 + 1 + 8 + 8;

struct FrameHeader {
  std::uint32_t payload_length = 0;
  MessageType type = MessageType::kCodedPacket;
  NodeId sender;
  RoundTag round_tag = 0;

  friend bool operator==(const FrameHeader&, const FrameHeader&) = default;
};

std::array<std::uint8_t, kHeaderSize> encode_header(const FrameHeader& header);

/// Throws TransportError on an unknown message type.
FrameHeader decode_header(std::span<const std::uint8_t, kHeaderSize> bytes);

/// Header followed by payload. Throws TransportError if the payload exceeds 2^32 - 1 bytes.
Bytes encode_frame(MessageType type, NodeId sender, RoundTag tag,
                   std::span<const std::uint8_t> payload);

}  // namespace coded_rebalance::wire
