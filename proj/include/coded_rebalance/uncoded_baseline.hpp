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

#include "coded_rebalance/channel.hpp"
#include "coded_rebalance/removal.hpp"

namespace coded_rebalance {

/// Uncoded removal: the lowest-id surviving holder of each lost W_i
/// broadcasts it in full and node i_1 stores it; the merge is the same as
/// the coded path, so only the log differs. Load is 1.
RebalanceOutcome execute_removal_uncoded(const ClusterDatabase& db, NodeId removed,
                                         BroadcastChannel& channel);

}  // namespace coded_rebalance
