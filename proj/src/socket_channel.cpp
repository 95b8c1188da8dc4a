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

#include "coded_rebalance/socket_channel.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <deque>
#include <string>

#include "coded_rebalance/errors.hpp"
#include "coded_rebalance/wire.hpp"

namespace coded_rebalance {

struct SocketChannel::Link {
  NodeId id;
  int tx = -1;
  int rx = -1;
  std::mutex tx_mutex;
  std::thread reader;

  std::mutex inbox_mutex;
  std::condition_variable arrived;
  std::map<RoundTag, std::deque<Packet>> inbox;
  bool closed = false;
  std::string error;
};

namespace {

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

void write_all(int fd, const std::uint8_t* data, std::size_t size) {
  while (size > 0) {
    const ssize_t n = ::send(fd, data, size, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("send"));
    }
    data += n;
    size -= static_cast<std::size_t>(n);
  }
}

// False on clean EOF before the first byte.
bool read_exact(int fd, std::uint8_t* data, std::size_t size) {
  std::size_t got = 0;
  while (got < size) {
    const ssize_t n = ::recv(fd, data + got, size - got, 0);
    if (n == 0) {
      if (got == 0) return false;
      throw TransportError("connection closed mid-frame");
    }
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("recv"));
    }
    got += static_cast<std::size_t>(n);
  }
  return true;
}

void close_fd(int& fd) {
  if (fd >= 0) {
    ::close(fd);
    fd = -1;
  }
}

}  // namespace

SocketChannel::SocketChannel(std::chrono::milliseconds receive_timeout)
    : receive_timeout_(receive_timeout) {}

SocketChannel::~SocketChannel() { shutdown_links(); }

void SocketChannel::open(std::span<const NodeId> participants, std::uint64_t operation_id) {
  shutdown_links();
  {
    std::lock_guard lock(log_mutex_);
    log_ = TransmissionLog{};
  }
  operation_id_ = operation_id;

  int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener < 0) throw TransportError(errno_text("socket"));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  socklen_t len = sizeof(addr);
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 ||
      ::listen(listener, static_cast<int>(participants.size()) + 1) < 0 ||
      ::getsockname(listener, reinterpret_cast<sockaddr*>(&addr), &len) < 0) {
    const auto message = errno_text("listen");
    ::close(listener);
    throw TransportError(message);
  }

  try {
    for (auto id : participants) {
      auto link = std::make_unique<Link>();
      link->id = id;
      link->tx = ::socket(AF_INET, SOCK_STREAM, 0);
      if (link->tx < 0) throw TransportError(errno_text("socket"));
      if (::connect(link->tx, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        close_fd(link->tx);
        throw TransportError(errno_text("connect"));
      }
      int one = 1;
      ::setsockopt(link->tx, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      link->rx = ::accept(listener, nullptr, nullptr);
      if (link->rx < 0) {
        close_fd(link->tx);
        throw TransportError(errno_text("accept"));
      }
      links_.emplace(id, std::move(link));
    }
  } catch (...) {
    ::close(listener);
    shutdown_links();
    throw;
  }
  ::close(listener);

  for (auto& [id, link] : links_) {
    Link* l = link.get();
    l->reader = std::thread([l] {
      std::string error;
      try {
        std::array<std::uint8_t, wire::kHeaderSize> header_bytes{};
        while (read_exact(l->rx, header_bytes.data(), header_bytes.size())) {
          const auto header = wire::decode_header(header_bytes);
          auto payload = std::make_shared<Bytes>(header.payload_length);
          if (header.payload_length > 0 &&
              !read_exact(l->rx, payload->data(), payload->size())) {
            throw TransportError("connection closed mid-frame");
          }
          std::lock_guard lock(l->inbox_mutex);
          l->inbox[header.round_tag].push_back(
              Packet{header.sender, header.round_tag, header.type, std::move(payload)});
          l->arrived.notify_all();
        }
      } catch (const std::exception& e) {
        error = e.what();
      }
      std::lock_guard lock(l->inbox_mutex);
      l->closed = true;
      l->error = error;
      l->arrived.notify_all();
    });
  }
}

DeliveryReceipt SocketChannel::broadcast(NodeId sender, RoundTag tag, MessageType type,
                                         std::span<const std::uint8_t> payload) {
  if (!links_.contains(sender)) {
    throw ParameterError("broadcast from non-participant " + std::to_string(sender.value));
  }
  const Bytes frame = wire::encode_frame(type, sender, tag, payload);
  DeliveryReceipt receipt;
  for (auto& [id, link] : links_) {
    if (id == sender) continue;
    std::lock_guard lock(link->tx_mutex);
    if (link->tx < 0) {
      throw TransportError("connection to node " + std::to_string(id.value) + " is down");
    }
    write_all(link->tx, frame.data(), frame.size());
    ++receipt.deliveries;
  }
  receipt.payload_bytes = payload.size();
  std::lock_guard lock(log_mutex_);
  log_.append({sender, tag, payload.size(), operation_id_, type});
  return receipt;
}

std::vector<Packet> SocketChannel::receive(NodeId receiver, RoundTag tag, std::size_t count) {
  auto it = links_.find(receiver);
  if (it == links_.end()) {
    throw ParameterError("receive at non-participant " + std::to_string(receiver.value));
  }
  Link& link = *it->second;
  std::unique_lock lock(link.inbox_mutex);
  auto& queue = link.inbox[tag];
  const bool complete = link.arrived.wait_for(
      lock, receive_timeout_, [&] { return queue.size() >= count || link.closed; });
  if (!complete || queue.size() < count) {
    std::string reason = complete ? "connection closed" : "timed out";
    if (!link.error.empty()) reason += " (" + link.error + ")";
    throw TransportError("round " + std::to_string(tag) + " incomplete at node " +
                         std::to_string(receiver.value) + ": " + reason);
  }
  std::vector<Packet> out(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(count));
  queue.erase(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

TransmissionLog SocketChannel::close() {
  shutdown_links();
  std::lock_guard lock(log_mutex_);
  return std::exchange(log_, TransmissionLog{});
}

std::uint64_t SocketChannel::meter() const {
  std::lock_guard lock(log_mutex_);
  return log_.total_bytes();
}

void SocketChannel::sever(NodeId receiver) {
  auto it = links_.find(receiver);
  if (it == links_.end()) {
    throw ParameterError("unknown node " + std::to_string(receiver.value));
  }
  std::lock_guard lock(it->second->tx_mutex);
  if (it->second->tx >= 0) ::shutdown(it->second->tx, SHUT_RDWR);
  close_fd(it->second->tx);
}

void SocketChannel::shutdown_links() {
  for (auto& [id, link] : links_) {
    {
      std::lock_guard lock(link->tx_mutex);
      if (link->tx >= 0) ::shutdown(link->tx, SHUT_WR);
      close_fd(link->tx);
    }
    if (link->reader.joinable()) link->reader.join();
    close_fd(link->rx);
  }
  links_.clear();
}

}  // namespace coded_rebalance
