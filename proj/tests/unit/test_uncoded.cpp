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

#include "coded_rebalance/database.hpp"
#include "coded_rebalance/removal.hpp"
#include "coded_rebalance/uncoded_baseline.hpp"
#include "coded_rebalance/verification.hpp"
#include "support.hpp"

using namespace coded_rebalance;
using test_support::min_bytes;

TEST_SUITE("uncoded_baseline") {
  TEST_CASE("K=5 r=3: 12 full-subfile transmissions, load 1, twice the coded bytes") {
    const std::uint64_t N = 240;
    const auto db = init_database(5, 3, {N, 21});
    MemoryChannel a, b;
    const auto uncoded = execute_removal_uncoded(db, NodeId(5), a);
    const auto coded = execute_removal(db, NodeId(5), b);
    CHECK(uncoded.log.size() == 12);
    for (const auto& e : uncoded.log.entries()) CHECK(e.payload_bytes == N / 20);
    CHECK(uncoded.load.measured == Rational(1));
    CHECK(Rational(static_cast<std::int64_t>(coded.load.bytes_transmitted),
                   static_cast<std::int64_t>(uncoded.load.bytes_transmitted)) == Rational(1, 2));
    CHECK(uncoded.database == coded.database);
  }

  TEST_CASE("sender is the lowest-id surviving holder") {
    const auto db = init_database(5, 3, {240, 21});
    MemoryChannel channel;
    const auto out = execute_removal_uncoded(db, NodeId(5), channel);
    // first lost index in lexicographic order is [1 2], held by 3 and 4 after 5 is gone
    CHECK(out.log.entries().front().sender == NodeId(3));
  }

  TEST_CASE("property: grid, uncoded / coded = r - 1 and identical results") {
    for (std::uint64_t K = 3; K <= 7; ++K) {
      for (int r = 2; r <= static_cast<int>(K) - 1; ++r) {
        CAPTURE(K);
        CAPTURE(r);
        const auto db = init_database(K, r, {min_bytes(K, r), 4});
        for (std::uint64_t k : {std::uint64_t{1}, K}) {
          MemoryChannel a, b;
          const auto uncoded = execute_removal_uncoded(db, NodeId(k), a);
          const auto coded = execute_removal(db, NodeId(k), b);
          CHECK(uncoded.load.bytes_transmitted ==
                static_cast<std::uint64_t>(r - 1) * coded.load.bytes_transmitted);
          CHECK(uncoded.database == coded.database);
          CHECK(canonicalize(uncoded.database).serialize() ==
                canonicalize(coded.database).serialize());
        }
      }
    }
  }
}
