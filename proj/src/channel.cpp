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

#include "coded_rebalance/channel.hpp"

#include <string>
#include <utility>

#include "coded_rebalance/errors.hpp"

namespace coded_rebalance {

std::uint64_t TransmissionLog::total_bytes() const noexcept {
  std::uint64_t total = 0;
  for (const auto& e : entries_) total += e.payload_bytes;
  return total;
}

std::uint64_t TransmissionLog::bytes_from(NodeId sender) const noexcept {
  std::uint64_t total = 0;
  for (const auto& e : entries_) {
    if (e.sender == sender) total += e.payload_bytes;
  }
  return total;
}

void MemoryChannel::open(std::span<const NodeId> participants, std::uint64_t operation_id) {
  inboxes_.clear();
  for (auto id : participants) inboxes_[id];
  log_ = TransmissionLog{};
  operation_id_ = operation_id;
}

DeliveryReceipt MemoryChannel::broadcast(NodeId sender, RoundTag tag, MessageType type,
                                         std::span<const std::uint8_t> payload) {
  if (!inboxes_.contains(sender)) {
    throw ParameterError("broadcast from non-participant " + std::to_string(sender.value));
  }
  auto shared = std::make_shared<const Bytes>(payload.begin(), payload.end());
  DeliveryReceipt receipt;
  for (auto& [id, inbox] : inboxes_) {
    if (id == sender) continue;
    inbox[tag].push_back(Packet{sender, tag, type, shared});
    ++receipt.deliveries;
  }
  receipt.payload_bytes = payload.size();
  log_.append({sender, tag, payload.size(), operation_id_, type});
  return receipt;
}

std::vector<Packet> MemoryChannel::receive(NodeId receiver, RoundTag tag, std::size_t count) {
  auto inbox = inboxes_.find(receiver);
  if (inbox == inboxes_.end()) {
    throw ParameterError("receive at non-participant " + std::to_string(receiver.value));
  }
  auto& queue = inbox->second[tag];
  if (queue.size() < count) {
    throw TransportError("round " + std::to_string(tag) + " incomplete at node " +
                         std::to_string(receiver.value) + ": " + std::to_string(queue.size()) +
                         " of " + std::to_string(count) + " packets");
  }
  std::vector<Packet> out(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(count));
  queue.erase(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

TransmissionLog MemoryChannel::close() {
  inboxes_.clear();
  return std::exchange(log_, TransmissionLog{});
}

}  // namespace coded_rebalance
