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
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "coded_rebalance/types.hpp"

namespace coded_rebalance {

using RoundTag = std::uint64_t;

enum class MessageType : std::uint8_t {
  kCodedPacket = 0x01,
  kPlainPart = 0x02,
  kRoundBarrier = 0x03,
};

struct Packet {
  NodeId sender;
  RoundTag round_tag = 0;
  MessageType type = MessageType::kCodedPacket;
  std::shared_ptr<const Bytes> payload;

  std::size_t size() const noexcept { return payload ? payload->size() : 0; }
};

struct LogEntry {
  NodeId sender;
  RoundTag round_tag = 0;
  std::uint64_t payload_bytes = 0;
  std::uint64_t operation_id = 0;
  MessageType type = MessageType::kCodedPacket;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

/// Every broadcast of one operation, in emission order.
class TransmissionLog {
 public:
  void append(const LogEntry& entry) { entries_.push_back(entry); }
  const std::vector<LogEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t total_bytes() const noexcept;
  std::uint64_t bytes_from(NodeId sender) const noexcept;

  friend bool operator==(const TransmissionLog&, const TransmissionLog&) = default;

 private:
  std::vector<LogEntry> entries_;
};

struct DeliveryReceipt {
  std::size_t deliveries = 0;
  std::uint64_t payload_bytes = 0;
};

/// Noiseless shared bus between the nodes of one rebalancing operation.
///
/// A broadcast is delivered to every participant except the sender. Delivery
/// is reliable and FIFO per sender; nothing may depend on cross-sender order.
/// The meter counts payload bytes only, once per broadcast.
class BroadcastChannel {
 public:
  virtual ~BroadcastChannel() = default;

  /// Starts a session for one operation. Any previous session is discarded.
  virtual void open(std::span<const NodeId> participants, std::uint64_t operation_id) = 0;

  /// Throws ParameterError for an unknown sender, TransportError on delivery failure.
  virtual DeliveryReceipt broadcast(NodeId sender, RoundTag tag, MessageType type,
                                    std::span<const std::uint8_t> payload) = 0;

  /// Removes and returns the next `count` packets tagged `tag` delivered to
  /// `receiver`, in arrival order. Blocks (socket) or fails (memory) with
  /// TransportError when the round cannot complete.
  virtual std::vector<Packet> receive(NodeId receiver, RoundTag tag, std::size_t count) = 0;

  /// Ends the session and returns its log.
  virtual TransmissionLog close() = 0;

  /// Payload bytes metered in the current session.
  virtual std::uint64_t meter() const = 0;
};

/// Single-threaded in-memory bus with shared payload buffers.
class MemoryChannel final : public BroadcastChannel {
 public:
  void open(std::span<const NodeId> participants, std::uint64_t operation_id) override;
  DeliveryReceipt broadcast(NodeId sender, RoundTag tag, MessageType type,
                            std::span<const std::uint8_t> payload) override;
  std::vector<Packet> receive(NodeId receiver, RoundTag tag, std::size_t count) override;
  TransmissionLog close() override;
  std::uint64_t meter() const override { return log_.total_bytes(); }

 private:
  using Inbox = std::map<RoundTag, std::vector<Packet>>;

  std::map<NodeId, Inbox> inboxes_;
  TransmissionLog log_;
  std::uint64_t operation_id_ = 0;
};

}  // namespace coded_rebalance
