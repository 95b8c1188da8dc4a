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

#include "coded_rebalance/combinatorics.hpp"
#include "coded_rebalance/database.hpp"
#include "coded_rebalance/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace coded_rebalance;
using test_support::min_bytes;
using test_support::range_ids;

namespace {

std::vector<OrderedIndex> keys(const NodeStorage& storage) {
  std::vector<OrderedIndex> out;
  for (const auto& [index, _] : storage) out.push_back(index);
  return out;
}

}  // namespace

TEST_SUITE("database") {
  TEST_CASE("required multiple") {
    CHECK(required_file_multiple(3, 5) == 240);  // (r-1) P(6,3)
    CHECK(required_file_multiple(2, 4) == 60);   // 1 * P(5,3)
    CHECK_THROWS_AS(required_file_multiple(1, 4), ParameterError);
  }

  TEST_CASE("K=4, r=2: node 1 and node 2 holdings") {
    const auto db = init_database(4, 2, {60, 1});
    const std::vector<OrderedIndex> node1 = {{2, 3}, {2, 4}, {3, 2}, {3, 4}, {4, 2}, {4, 3}};
    const std::vector<OrderedIndex> node2 = {{1, 3}, {1, 4}, {3, 1}, {3, 4}, {4, 1}, {4, 3}};
    CHECK(keys(db.storage(NodeId(1))) == node1);
    CHECK(keys(db.storage(NodeId(2))) == node2);
  }

  TEST_CASE("K=5, r=3: 20 subfiles, 12 per node, lambda 3/5") {
    const std::uint64_t N = 240;
    const auto db = init_database(5, 3, {N, 11});
    for (auto id : db.node_ids()) {
      CHECK(db.storage(id).size() == 12);
      CHECK(db.stored_bytes(id) * 5 == 3 * N);
    }
    const auto& node1 = db.storage(NodeId(1));
    CHECK(node1.contains(OrderedIndex{2, 3}));
    CHECK(node1.contains(OrderedIndex{5, 4}));
    CHECK_FALSE(node1.contains(OrderedIndex{1, 4}));
    CHECK(db.next_node_id == NodeId(6));
  }

  TEST_CASE("K=3, r=2: three singleton subfiles") {
    // labels S([3],1) = [1],[2],[3]; node k stores the two labels without k
    const auto db = init_database(3, 2, {min_bytes(3, 2), 3});
    CHECK(keys(db.storage(NodeId(1))) == std::vector<OrderedIndex>{{2}, {3}});
    CHECK(keys(db.storage(NodeId(2))) == std::vector<OrderedIndex>{{1}, {3}});
    CHECK(keys(db.storage(NodeId(3))) == std::vector<OrderedIndex>{{1}, {2}});
    const NodeId all[] = {NodeId(1), NodeId(2), NodeId(3)};
    CHECK(replication_profile(db, all).at(2) == db.file.size_bytes);
  }

  TEST_CASE("parameter and divisibility errors") {
    CHECK_THROWS_AS(init_database(5, 1, {240, 0}), ParameterError);
    CHECK_THROWS_AS(init_database(5, 5, {240, 0}), ParameterError);
    try {
      init_database(5, 3, {120, 0});
      FAIL("expected DivisibilityError");
    } catch (const DivisibilityError& e) {
      CHECK(e.required_multiple() == 240);
      CHECK(std::string(e.what()).find("240") != std::string::npos);
    }
    // the scenario bound covers growth to max_nodes
    CHECK_THROWS_AS(init_database(5, 3, {240, 0}, 6), DivisibilityError);
    CHECK_NOTHROW(init_database(5, 3, {2 * 840, 0}, 6));
    CHECK_THROWS_AS(init_database(5, 3, {240, 0}, 4), ParameterError);
  }

  TEST_CASE("replication profiles match the placement oracle") {
    const std::uint64_t K = 5, N = 240;
    const int r = 3;
    const auto db = init_database(K, r, {N, 5});

    SUBCASE("all nodes: every byte has count r") {
      const auto profile = replication_profile(db, db.node_ids());
      CHECK(profile.at(3) == N);
      CHECK(profile.total() == N);
    }
    SUBCASE("a single node holds lambda N bytes once") {
      const NodeId one[] = {NodeId(2)};
      const auto profile = replication_profile(db, one);
      CHECK(profile.at(1) == 144);
      CHECK(profile.at(0) == 96);
    }
    SUBCASE("all but k: lambda N at r-1, the rest at r") {
      for (std::uint64_t k = 1; k <= K; ++k) {
        std::vector<NodeId> subset;
        std::vector<std::uint64_t> raw;
        for (std::uint64_t j = 1; j <= K; ++j) {
          if (j == k) continue;
          subset.emplace_back(j);
          raw.push_back(j);
        }
        const auto per_byte = per_byte_replication(db, subset);
        CHECK(per_byte == oracle::fresh_holders(K, r, N, raw));
        const auto profile = replication_profile(db, subset);
        CHECK(profile.at(2) == 144);
        CHECK(profile.at(3) == 96);
      }
    }
    SUBCASE("unknown node") {
      const NodeId bad[] = {NodeId(42)};
      CHECK_THROWS_AS(replication_profile(db, bad), ParameterError);
    }
  }

  TEST_CASE("fresh databases on the grid are balanced and reconstruct the file") {
    for (std::uint64_t K = 3; K <= 8; ++K) {
      for (int r = 2; r <= static_cast<int>(K) - 1; ++r) {
        CAPTURE(K);
        CAPTURE(r);
        const std::uint64_t N = min_bytes(K, r);
        const FileSpec file{N, K * 100 + static_cast<std::uint64_t>(r)};
        const auto db = init_database(K, r, file);
        CHECK(verify_balanced(db).passed());
        const std::uint64_t per_node = falling_factorial(K - 1, K - static_cast<std::uint64_t>(r));
        for (auto id : db.node_ids()) {
          CHECK(db.storage(id).size() == per_node);
          CHECK(db.stored_bytes(id) * K == static_cast<std::uint64_t>(r) * N);
        }
        CHECK(reconstruct_file(db) == generate_file_content(file));
      }
    }
  }

  TEST_CASE("verify_balanced reports a deleted subfile") {
    auto db = init_database(5, 3, {240, 9});
    db.storage(NodeId(1)).erase(OrderedIndex{2, 3});
    const auto report = verify_balanced(db);
    REQUIRE_FALSE(report.passed());
    bool saw_replication = false;
    for (const auto& v : report.violations) {
      if (v.invariant == Invariant::kReplication) {
        saw_replication = true;
        CHECK(v.detail.find("byte") != std::string::npos);
      }
    }
    CHECK(saw_replication);
    CHECK(report.first()->invariant == Invariant::kBalance);
  }

  TEST_CASE("verify_balanced reports diverging replicas") {
    auto db = init_database(4, 2, {60, 9});
    db.storage(NodeId(1)).at(OrderedIndex{2, 3}).payload[0] ^= 0xff;
    const auto report = verify_balanced(db);
    REQUIRE_FALSE(report.passed());
    CHECK(report.first()->invariant == Invariant::kPartition);
  }

  TEST_CASE("reconstruct_file detects missing bytes") {
    auto db = init_database(4, 2, {60, 9});
    for (auto& [id, storage] : db.nodes) storage.erase(OrderedIndex{2, 3});
    CHECK_THROWS_AS(reconstruct_file(db), ProtocolViolation);
  }

  TEST_CASE("file content is deterministic per seed") {
    CHECK(generate_file_content({64, 3}) == generate_file_content({64, 3}));
    CHECK(generate_file_content({64, 3}) != generate_file_content({64, 4}));
  }

  TEST_CASE("provenance slicing") {
    const Provenance p = {{10, 4}, {30, 4}};
    CHECK(slice_provenance(p, 0, 4) == Provenance{{10, 4}});
    CHECK(slice_provenance(p, 2, 4) == Provenance{{12, 2}, {30, 2}});
    CHECK(slice_provenance(p, 6, 2) == Provenance{{32, 2}});
    CHECK_THROWS_AS(slice_provenance(p, 6, 4), ParameterError);
    Provenance q;
    append_range(q, {0, 3});
    append_range(q, {3, 2});
    append_range(q, {9, 1});
    CHECK(q == Provenance{{0, 5}, {9, 1}});
  }
}
