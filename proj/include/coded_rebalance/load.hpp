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

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace coded_rebalance {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& value);

enum class OperationKind { kRemoval, kAddition };

std::string to_string(OperationKind kind);

/// Exact communication load of one rebalancing operation.
/// measured = bytes_transmitted / normalizer, where the normalizer is the
/// removed node's storage (removal) or the new node's storage (addition).
struct LoadReport {
  OperationKind operation = OperationKind::kRemoval;
  std::uint64_t bytes_transmitted = 0;
  std::uint64_t normalizer_bytes = 0;
  Rational measured;
  Rational theory;
  Rational lambda_before;
  Rational lambda_after;
};

}  // namespace coded_rebalance
