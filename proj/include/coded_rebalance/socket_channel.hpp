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

#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "coded_rebalance/channel.hpp"

namespace coded_rebalance {

/// Bus implemented over TCP connections on 127.0.0.1 using the framed wire
/// format. Each participant owns one inbound connection drained by a reader
/// thread; a broadcast writes the frame once to every other participant's
/// connection.
class SocketChannel final : public BroadcastChannel {
 public:
  explicit SocketChannel(std::chrono::milliseconds receive_timeout = std::chrono::seconds(30));
  ~SocketChannel() override;

  SocketChannel(const SocketChannel&) = delete;
  SocketChannel& operator=(const SocketChannel&) = delete;

  void open(std::span<const NodeId> participants, std::uint64_t operation_id) override;
  DeliveryReceipt broadcast(NodeId sender, RoundTag tag, MessageType type,
                            std::span<const std::uint8_t> payload) override;
  std::vector<Packet> receive(NodeId receiver, RoundTag tag, std::size_t count) override;
  TransmissionLog close() override;
  std::uint64_t meter() const override;

  /// Drops the outbound connection to `receiver`; later deliveries to it fail.
  void sever(NodeId receiver);

 private:
  struct Link;

  void shutdown_links();

  std::chrono::milliseconds receive_timeout_;
  std::map<NodeId, std::unique_ptr<Link>> links_;
  mutable std::mutex log_mutex_;
  TransmissionLog log_;
  std::uint64_t operation_id_ = 0;
};

}  // namespace coded_rebalance
