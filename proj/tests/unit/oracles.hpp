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

// Test-only reference computations. Nothing here calls into the library's
// enumeration, placement or exchange code.
#pragma once

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

// All length-l sequences over 1..n with distinct entries, via an odometer
// over all n^l sequences. The odometer visits them in lexicographic order.
inline std::vector<std::vector<std::uint64_t>> distinct_tuples(std::uint64_t n, std::size_t l) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> digits(l, 1);
  if (n == 0 && l > 0) return out;
  while (true) {
    std::set<std::uint64_t> uniq(digits.begin(), digits.end());
    if (uniq.size() == l) out.push_back(digits);
    std::size_t pos = l;
    while (pos > 0) {
      --pos;
      if (digits[pos] < n) {
        ++digits[pos];
        break;
      }
      digits[pos] = 1;
      if (pos == 0) return out;
    }
    if (l == 0) return out;
  }
}

inline bool contains(const std::vector<std::uint64_t>& tuple, std::uint64_t id) {
  for (auto c : tuple) {
    if (c == id) return true;
  }
  return false;
}

inline std::uint64_t product(std::uint64_t from, std::uint64_t count) {
  std::uint64_t p = 1;
  for (std::uint64_t i = 0; i < count; ++i) p *= from - i;
  return p;
}

// Number of nodes of `subset` holding byte n of a fresh C(r,[K]) with file size N:
// byte n lives in subfile n / (N / P(K, K-r)) of the lexicographic label list.
inline std::vector<std::uint32_t> fresh_holders(std::uint64_t K, int r, std::uint64_t N,
                                                const std::vector<std::uint64_t>& subset) {
  const auto labels = distinct_tuples(K, K - static_cast<std::uint64_t>(r));
  const std::uint64_t len = N / labels.size();
  std::vector<std::uint32_t> counts(N, 0);
  for (std::uint64_t n = 0; n < N; ++n) {
    for (auto k : subset) {
      if (!contains(labels[n / len], k)) ++counts[n];
    }
  }
  return counts;
}

// Reference exchange with 1-based labels: files[j] is B_{j+1}, each node
// m holds every file but its own. Returns {packets, decoded}.
struct ExchangeOutcome {
  std::vector<std::vector<std::uint8_t>> packets;
  std::vector<std::vector<std::uint8_t>> decoded;
  std::uint64_t cost = 0;
};

inline ExchangeOutcome xor_exchange(const std::vector<std::vector<std::uint8_t>>& files) {
  const std::size_t r = files.size();
  const std::size_t part = files[0].size() / (r - 1);
  // subfile B_{j,i}, i != j, is slice number (i < j ? i : i - 1) counting from 0
  auto sub = [&](std::size_t j, std::size_t i, std::size_t b) {
    const std::size_t slot = i < j ? i : i - 1;
    return files[j][slot * part + b];
  };
  ExchangeOutcome out;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::uint8_t> e(part, 0);
    for (std::size_t j = 0; j < r; ++j) {
      if (j == i) continue;
      for (std::size_t b = 0; b < part; ++b) e[b] ^= sub(j, i, b);
    }
    out.cost += e.size();
    out.packets.push_back(std::move(e));
  }
  for (std::size_t m = 0; m < r; ++m) {
    std::vector<std::uint8_t> dec(files[m].size(), 0);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == m) continue;
      const std::size_t slot = i < m ? i : i - 1;
      for (std::size_t b = 0; b < part; ++b) {
        std::uint8_t v = out.packets[i][b];
        for (std::size_t j = 0; j < r; ++j) {
          if (j != m && j != i) v ^= sub(j, i, b);
        }
        dec[slot * part + b] = v;
      }
    }
    out.decoded.push_back(std::move(dec));
  }
  return out;
}

}  // namespace oracle
