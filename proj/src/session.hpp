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

#include <span>

#include "coded_rebalance/channel.hpp"

namespace coded_rebalance::detail {

// Opens a channel session and closes it on every exit path.
class Session {
 public:
  Session(BroadcastChannel& channel, std::span<const NodeId> participants,
          std::uint64_t operation_id)
      : channel_(channel) {
    channel_.open(participants, operation_id);
  }
  ~Session() {
    if (!finished_) {
      try {
        channel_.close();
      } catch (...) {
      }
    }
  }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  TransmissionLog finish() {
    finished_ = true;
    return channel_.close();
  }

 private:
  BroadcastChannel& channel_;
  bool finished_ = false;
};

}  // namespace coded_rebalance::detail
