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

#include <doctest.h>

#include <random>

#include "coded_rebalance/channel.hpp"
#include "coded_rebalance/data_exchange.hpp"
#include "coded_rebalance/database.hpp"
#include "coded_rebalance/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace coded_rebalance;
using test_support::ids;
using test_support::range_ids;

namespace {

std::vector<Bytes> random_files(std::size_t count, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Bytes> out(count, Bytes(length));
  for (auto& f : out) {
    for (auto& b : f) b = static_cast<std::uint8_t>(rng());
  }
  return out;
}

Bytes slice(const Bytes& b, std::size_t from, std::size_t len) {
  return Bytes(b.begin() + static_cast<std::ptrdiff_t>(from),
               b.begin() + static_cast<std::ptrdiff_t>(from + len));
}

}  // namespace

TEST_SUITE("data_exchange") {
  TEST_CASE("split into r-1 contiguous parts") {
    const Bytes file = {1, 2, 3, 4, 5, 6};
    const auto parts = split_for_exchange(file, 3);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == Bytes{1, 2, 3});
    CHECK(parts[1] == Bytes{4, 5, 6});
    CHECK(split_for_exchange(file, 2) == std::vector<Bytes>{file});
    CHECK_THROWS_AS(split_for_exchange(file, 5), AlignmentError);
  }

  TEST_CASE("K=5 r=3 subfile [1 4] splits into halves keyed by nodes 2 and 3") {
    const auto db = init_database(5, 3, {240, 17});
    const Bytes& w14 = db.storage(NodeId(2)).at(OrderedIndex{1, 4}).payload;
    const auto parts = split_for_exchange(w14, 3);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == slice(w14, 0, 6));  // W_[1 4],2
    CHECK(parts[1] == slice(w14, 6, 6));  // W_[1 4],3
  }

  TEST_CASE("K=5 r=3 group G_4: node 1 sends W_[2 4],1 xor W_[3 4],1") {
    const auto db = init_database(5, 3, {240, 17});
    // group participants 1,2,3; files W_[1 4], W_[2 4], W_[3 4]
    const auto& node1 = db.storage(NodeId(1));
    const Bytes w14 = db.storage(NodeId(2)).at(OrderedIndex{1, 4}).payload;
    const Bytes w24 = node1.at(OrderedIndex{2, 4}).payload;
    const Bytes w34 = node1.at(OrderedIndex{3, 4}).payload;
    const auto group = ExchangeGroup::from_files(ids({1, 2, 3}), {w14, w24, w34});
    CHECK(group.part_length() == 6);

    const auto packet = encode_packet(group, 0);
    Bytes want(6);
    // node 1 is the first co-participant of both [2 4] and [3 4]
    for (std::size_t b = 0; b < 6; ++b) want[b] = w24[b] ^ w34[b];
    CHECK(packet.sender == NodeId(1));
    CHECK(packet.payload == want);

    const auto packet2 = encode_packet(group, 1);  // W_[1 4],2 xor W_[3 4],2
    for (std::size_t b = 0; b < 6; ++b) want[b] = w14[b] ^ w34[6 + b];
    CHECK(packet2.payload == want);

    MemoryChannel channel;
    channel.open(ids({1, 2, 3}), 1);
    const auto result = run_exchange(group, channel, 0);
    CHECK(result.delivered[0] == w14);
    CHECK(result.delivered[1] == w24);
    CHECK(result.delivered[2] == w34);
    CHECK(result.bytes_transmitted == 18);  // 3 packets of half a subfile
    const auto log = channel.close();
    CHECK(log.size() == 3);
    CHECK(log.entries()[0].sender == NodeId(1));
    CHECK(log.entries()[2].sender == NodeId(3));
  }

  TEST_CASE("r = 2: each packet is the other node's missing file") {
    const Bytes a = {1, 2, 3, 4}, b = {9, 8, 7, 6};
    const auto group = ExchangeGroup::from_files(ids({3, 8}), {a, b});
    CHECK(encode_packet(group, 0).payload == b);
    CHECK(encode_packet(group, 1).payload == a);
    MemoryChannel channel;
    channel.open(ids({3, 8}), 1);
    const auto result = run_exchange(group, channel, 5);
    CHECK(result.bytes_transmitted == 8);
    CHECK(result.delivered == std::vector<Bytes>{a, b});
  }

  TEST_CASE("r = 5, l = 20: cost 25, decoding matches the brute-force XOR oracle") {
    const auto files = random_files(5, 20, 99);
    const auto want = oracle::xor_exchange(files);
    CHECK(want.cost == 25);
    const auto group = ExchangeGroup::from_files(range_ids(1, 5), files);
    for (std::size_t i = 0; i < 5; ++i) CHECK(encode_packet(group, i).payload == want.packets[i]);
    MemoryChannel channel;
    channel.open(range_ids(1, 5), 1);
    const auto result = run_exchange(group, channel, 0);
    CHECK(result.bytes_transmitted == 25);
    CHECK(result.delivered == want.decoded);
    CHECK(result.delivered == files);
  }

  TEST_CASE("property: r in 2..8, random payloads, metered cost l r/(r-1)") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 2 + rng() % 7;
      const std::size_t len = (r - 1) * (1 + rng() % 9);
      const auto files = random_files(r, len, rng());
      std::vector<NodeId> participants;
      std::uint64_t id = 1 + rng() % 5;
      for (std::size_t m = 0; m < r; ++m) participants.emplace_back(id += 1 + rng() % 3);
      const auto group = ExchangeGroup::from_files(participants, files);
      MemoryChannel channel;
      channel.open(participants, 1);
      const auto result = run_exchange(group, channel, trial);
      const auto log = channel.close();
      CAPTURE(r);
      CHECK(result.delivered == files);
      CHECK(log.total_bytes() * (r - 1) == len * r);
      CHECK(result.bytes_transmitted == log.total_bytes());
    }
  }

  TEST_CASE("groups are independent of execution order") {
    const auto f1 = random_files(3, 8, 1), f2 = random_files(3, 8, 2);
    const auto g1 = ExchangeGroup::from_files(ids({1, 2, 3}), f1);
    const auto g2 = ExchangeGroup::from_files(ids({1, 2, 3}), f2);
    MemoryChannel a, b;
    a.open(ids({1, 2, 3}), 1);
    b.open(ids({1, 2, 3}), 1);
    const auto a1 = run_exchange(g1, a, 0), a2 = run_exchange(g2, a, 1);
    const auto b2 = run_exchange(g2, b, 1), b1 = run_exchange(g1, b, 0);
    CHECK(a1.delivered == b1.delivered);
    CHECK(a2.delivered == b2.delivered);
  }

  TEST_CASE("group validation") {
    const Bytes x = {1, 2, 3}, y = {4, 5, 6}, z = {7, 8, 9};
    CHECK_THROWS_AS(ExchangeGroup::from_files(ids({1, 2, 3}), {x, y, z}), AlignmentError);
    CHECK_THROWS_AS(ExchangeGroup::from_files(ids({2, 1}), {x, y}), ParameterError);
    CHECK_THROWS_AS(ExchangeGroup::from_files(ids({1}), {x}), ParameterError);
    CHECK_THROWS_AS(ExchangeGroup::from_files(ids({1, 2}), {x, Bytes{1}}), ParameterError);
    const auto group = ExchangeGroup::from_files(ids({1, 2}), {x, y});
    CHECK_THROWS_AS(encode_packet(group, 2), ParameterError);
  }

  TEST_CASE("a holder with a corrupted copy surfaces a protocol violation") {
    const Bytes a = {1, 2, 3, 4}, b = {5, 6, 7, 8}, c = {9, 10, 11, 12};
    std::vector<std::vector<std::optional<Bytes>>> holdings(3, std::vector<std::optional<Bytes>>(3));
    const std::vector<Bytes> files = {a, b, c};
    for (std::size_t m = 0; m < 3; ++m)
      for (std::size_t j = 0; j < 3; ++j)
        if (j != m) holdings[m][j] = files[j];
    (*holdings[2][1])[0] ^= 0x55;  // node 3's copy of B_2 is wrong
    ExchangeGroup group(ids({1, 2, 3}), std::move(holdings));
    MemoryChannel channel;
    channel.open(ids({1, 2, 3}), 1);
    CHECK_THROWS_AS(run_exchange(group, channel, 0), ProtocolViolation);
  }
}
