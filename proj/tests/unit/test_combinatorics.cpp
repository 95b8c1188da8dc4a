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
#include "coded_rebalance/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace coded_rebalance;
using test_support::ids;
using test_support::range_ids;

TEST_SUITE("combinatorics") {
  TEST_CASE("falling factorial values") {
    CHECK(falling_factorial(5, 2) == 20);
    CHECK(falling_factorial(4, 2) == 12);
    CHECK(falling_factorial(7, 0) == 1);
    CHECK(falling_factorial(6, 3) == 120);
    CHECK(falling_factorial(20, 20) == 2432902008176640000ull);
  }

  TEST_CASE("falling factorial domain errors") {
    CHECK_THROWS_AS(falling_factorial(3, 4), DomainError);
    CHECK_THROWS_AS(falling_factorial(25, 25), DomainError);
  }

  TEST_CASE("S([3],2) in lexicographic order") {
    const auto got = enumerate_ordered_indices(range_ids(1, 3), 2);
    const std::vector<OrderedIndex> want = {{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}};
    CHECK(got == want);
  }

  TEST_CASE("l = 0 gives the single empty tuple") {
    const auto got = enumerate_ordered_indices(ids({4, 9}), 0);
    REQUIRE(got.size() == 1);
    CHECK(got.front().empty());
  }

  TEST_CASE("S([5],2) has P(5,2) members") {
    CHECK(enumerate_ordered_indices(range_ids(1, 5), 2).size() == 20);
  }

  TEST_CASE("l > |ids| is a domain error") {
    CHECK_THROWS_AS(enumerate_ordered_indices(ids({1, 2}), 3), DomainError);
  }

  TEST_CASE("order of input ids does not matter, sparse ids work") {
    const auto a = enumerate_ordered_indices(ids({9, 2, 5}), 2);
    const auto b = enumerate_ordered_indices(ids({2, 5, 9}), 2);
    CHECK(a == b);
    CHECK(a.front() == OrderedIndex{2, 5});
    CHECK(a.back() == OrderedIndex{9, 5});
  }

  TEST_CASE("enumeration matches the odometer oracle on the grid") {
    for (std::uint64_t K = 3; K <= 10; ++K) {
      for (int r = 2; r <= static_cast<int>(K) - 1; ++r) {
        const std::size_t l = K - static_cast<std::uint64_t>(r);
        const auto got = enumerate_ordered_indices(range_ids(1, K), l);
        CAPTURE(K);
        CAPTURE(r);
        REQUIRE(got.size() == falling_factorial(K, l));
        if (K <= 7) {
          const auto want = oracle::distinct_tuples(K, l);
          REQUIRE(got.size() == want.size());
          for (std::size_t t = 0; t < got.size(); ++t) {
            std::vector<std::uint64_t> comps;
            for (auto c : got[t].components()) comps.push_back(c.value);
            REQUIRE(comps == want[t]);
          }
        }
      }
    }
  }

  TEST_CASE("ordered index helpers") {
    const OrderedIndex i{2, 3};
    CHECK(i.prefixed(NodeId(1)) == OrderedIndex{1, 2, 3});
    CHECK(i.inserted(1, NodeId(6)) == OrderedIndex{2, 6, 3});
    CHECK(i.inserted(2, NodeId(6)) == OrderedIndex{2, 3, 6});
    CHECK(OrderedIndex{1, 4}.tail() == OrderedIndex{4});
    CHECK(i.to_string() == "[2 3]");
    CHECK(OrderedIndex{1, 2, 5} != OrderedIndex{5, 2, 1});
    CHECK_THROWS_AS(OrderedIndex({1, 1}), ParameterError);
    CHECK(absent_ids(range_ids(1, 5), OrderedIndex{4, 2}) == ids({1, 3, 5}));
  }
}
