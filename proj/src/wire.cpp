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

#include "coded_rebalance/wire.hpp"

#include <algorithm>
#include <limits>

#include "coded_rebalance/errors.hpp"

namespace coded_rebalance::wire {

namespace {

template <typename T>
void put_be(std::uint8_t* out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out[i] = static_cast<std::uint8_t>(value >> (8 * (sizeof(T) - 1 - i)));
  }
}

template <typename T>
T get_be(const std::uint8_t* in) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value = static_cast<T>((value << 8) | in[i]);
  return value;
}

}  // namespace

std::array<std::uint8_t, kHeaderSize> encode_header(const FrameHeader& header) {
  std::array<std::uint8_t, kHeaderSize> out{};
  put_be<std::uint32_t>(out.data(), header.payload_length);
  out[4] = static_cast<std::uint8_t>(header.type);
  put_be<std::uint64_t>(out.data() + 5, header.sender.value);
  put_be<std::uint64_t>(out.data() + 13, header.round_tag);
  return out;
}

FrameHeader decode_header(std::span<const std::uint8_t, kHeaderSize> bytes) {
  FrameHeader header;
  header.payload_length = get_be<std::uint32_t>(bytes.data());
  const std::uint8_t type = bytes[4];
  if (type < 0x01 || type > 0x03) {
    throw TransportError("unknown message type " + std::to_string(type));
  }
  header.type = static_cast<MessageType>(type);
  header.sender = NodeId(get_be<std::uint64_t>(bytes.data() + 5));
  header.round_tag = get_be<std::uint64_t>(bytes.data() + 13);
  return header;
}

Bytes encode_frame(MessageType type, NodeId sender, RoundTag tag,
                   std::span<const std::uint8_t> payload) {
  if (payload.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw TransportError("payload too large for one frame");
  }
  const auto header =
      encode_header({static_cast<std::uint32_t>(payload.size()), type, sender, tag});
  Bytes frame(kHeaderSize + payload.size());
  std::copy(header.begin(), header.end(), frame.begin());
  std::copy(payload.begin(), payload.end(), frame.begin() + kHeaderSize);
  return frame;
}

}  // namespace coded_rebalance::wire
