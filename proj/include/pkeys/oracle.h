// Copyright 2026 The pkeys Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PKEYS_ORACLE_H_
#define PKEYS_ORACLE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pkeys/chain_partition.h"
#include "pkeys/netflow.h"
#include "pkeys/policy.h"
#include "pkeys/tree_partition.h"

// Brute-force ground truth for small instances. Nothing here calls the
// optimizers it is meant to check.
namespace pkeys::oracle {

struct Caps {
  std::size_t max_labels = 7;           // tree and chain enumeration
  std::size_t max_width_labels = 20;    // antichain search
  FlowUnits max_flow_units = 16;        // sum of arc upper bounds
};

// Visitors return false to stop early.
template <typename T>
using Visitor = std::function<bool(const T&)>;

// Every assignment of each label to one of its Hasse parents or to none.
// Count is the product over labels of (1 + #parents).
void enumerate_tree_partitions(const Policy& p, const Visitor<TreePartition>& visit,
                               const Caps& caps = {});

// Every set partition of the labels into chains of the closure order. The
// block containing the lowest uncovered label is chosen at each step, so
// the stream has no duplicates.
void enumerate_chain_partitions(const Policy& p,
                                const Visitor<ChainPartition>& visit,
                                const Caps& caps = {});

// Every integral flow with l <= f <= u meeting all balances.
void enumerate_integral_flows(const Network& net, const Visitor<Flow>& visit,
                              const Caps& caps = {});

// Secrets of a forest computed straight from the anchor definition: for
// every z <= x, the anchor is the forest-highest element of (down-set of x)
// intersected with (forest ancestors of z). Applies to tree and chain
// forests alike.
UserCount brute_forest_secrets(const Policy& p, const Forest& f);

UserCount brute_min_tree_secrets(const Policy& p, const Caps& caps = {});

// Fewest minimal elements over all tree partitions attaining the minimum
// secret count.
std::size_t brute_min_leaves_of_minimal_trees(const Policy& p,
                                              const Caps& caps = {});

struct ChainOptimum {
  UserCount secrets;
  std::size_t chain_count;  // smallest chain count attaining `secrets`
};
ChainOptimum brute_min_chain_secrets(const Policy& p, const Caps& caps = {});

std::size_t brute_width(const Policy& p, const Caps& caps = {});

// Minimum cost over enumerate_integral_flows, or nullopt if none is feasible.
std::optional<Cost> brute_min_flow_cost(const Network& net,
                                        const Caps& caps = {});

struct PolicyGenerator {
  std::uint64_t seed = 0;
  std::size_t n = 1;
  double density = 0.5;  // probability of each pair (i > j) being an edge
};

// Each pair i > j becomes an edge i -> j with probability `density`; user
// counts are uniform in [1, 5]. Deterministic in (seed, n, density).
Policy random_policy(const PolicyGenerator& gen);

}  // namespace pkeys::oracle

#endif  // PKEYS_ORACLE_H_
