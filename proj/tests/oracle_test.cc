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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "pkeys/errors.h"
#include "pkeys/oracle.h"
#include "support.h"

namespace pkeys {
namespace {

using testing::antichain;
using testing::chain_poset;
using testing::diamond;

std::size_t count_tree_partitions(const Policy& p) {
  std::size_t count = 0;
  oracle::enumerate_tree_partitions(p, [&](const TreePartition&) { return ++count, true; });
  return count;
}

std::size_t count_chain_partitions(const Policy& p) {
  std::size_t count = 0;
  oracle::enumerate_chain_partitions(p, [&](const ChainPartition&) { return ++count, true; });
  return count;
}

TEST(Oracle, TreeEnumerationCountsParentChoices) {
  EXPECT_EQ(count_tree_partitions(chain_poset(3)), 4u);
  EXPECT_EQ(count_tree_partitions(antichain(4)), 1u);
  EXPECT_EQ(count_tree_partitions(diamond()), 2u * 2u * 3u);
  for (const Policy& p : testing::small_corpus(60)) {
    std::size_t expected = 1;
    for (Label z = 0; z < p.size(); ++z) expected *= 1 + p.parents(z).size();
    EXPECT_EQ(count_tree_partitions(p), expected);
  }
}

TEST(Oracle, TreeEnumerationStopsOnRequest) {
  std::size_t seen = 0;
  oracle::enumerate_tree_partitions(diamond(), [&](const TreePartition&) {
    return ++seen < 3;
  });
  EXPECT_EQ(seen, 3u);
}

TEST(Oracle, ChainEnumerationIsDuplicateFree) {
  // Every set partition of a 3-chain is a chain partition.
  EXPECT_EQ(count_chain_partitions(chain_poset(3)), 5u);
  EXPECT_EQ(count_chain_partitions(chain_poset(4)), 15u);
  EXPECT_EQ(count_chain_partitions(antichain(3)), 1u);
  // Diamond: {0,1,3},{2} | {0,2,3},{1} | {0,3},{1},{2} | {0,1},{2,3} |
  // {0,2},{1,3} | {0,1},{2},{3} | {0,2},{1},{3} | {1,3},{0},{2} |
  // {2,3},{0},{1} | all singletons.
  EXPECT_EQ(count_chain_partitions(diamond()), 10u);
  std::set<std::vector<std::vector<Label>>> seen;
  oracle::enumerate_chain_partitions(interval_poset(3), [&](const ChainPartition& c) {
    auto chains = c.chains();
    std::sort(chains.begin(), chains.end());
    EXPECT_TRUE(seen.insert(chains).second);
    return true;
  });
}

TEST(Oracle, IntervalTwoChainOptimum) {
  oracle::ChainOptimum best = oracle::brute_min_chain_secrets(interval_poset(2));
  EXPECT_EQ(best.secrets, 4u);
  EXPECT_EQ(best.chain_count, 2u);
  oracle::ChainOptimum d = oracle::brute_min_chain_secrets(diamond());
  EXPECT_EQ(d.secrets, 6u);
  EXPECT_EQ(d.chain_count, 2u);
  EXPECT_EQ(oracle::brute_min_chain_secrets(chain_poset(4)).secrets, 4u);
}

TEST(Oracle, TreeOptima) {
  EXPECT_EQ(oracle::brute_min_tree_secrets(diamond()), 5u);
  EXPECT_EQ(oracle::brute_min_tree_secrets(chain_poset(5)), 5u);
  EXPECT_EQ(oracle::brute_min_tree_secrets(interval_poset(3)), 7u);
}

TEST(Oracle, Width) {
  EXPECT_EQ(oracle::brute_width(antichain(9)), 9u);
  EXPECT_EQ(oracle::brute_width(interval_poset(5)), 5u);
  EXPECT_EQ(oracle::brute_width(chain_poset(7)), 1u);
}

TEST(Oracle, FlowEnumeration) {
  Network forced;
  forced.node_count = 2;
  forced.balance = {0, 0};
  forced.add_arc(0, 1, 1, 1, 5);
  forced.add_arc(1, 0, 0, 3, 0);
  std::size_t flows = 0;
  oracle::enumerate_integral_flows(forced, [&](const Flow& f) {
    EXPECT_EQ(f, (Flow{1, 1}));
    return ++flows, true;
  });
  EXPECT_EQ(flows, 1u);
  EXPECT_EQ(oracle::brute_min_flow_cost(forced), 5);

  Network blocked;
  blocked.node_count = 2;
  blocked.balance = {2, -2};
  blocked.add_arc(0, 1, 0, 1, 0);
  EXPECT_FALSE(oracle::brute_min_flow_cost(blocked).has_value());
}

TEST(Oracle, CapsAreHardErrors) {
  EXPECT_THROW(count_tree_partitions(antichain(8)), TooLarge);
  EXPECT_THROW(count_chain_partitions(antichain(8)), TooLarge);
  EXPECT_THROW(oracle::brute_width(antichain(21)), TooLarge);
  EXPECT_EQ(oracle::brute_width(antichain(21), {.max_width_labels = 21}), 21u);
  Network big;
  big.node_count = 2;
  big.balance = {0, 0};
  big.add_arc(0, 1, 0, 17, 1);
  EXPECT_THROW(oracle::brute_min_flow_cost(big), TooLarge);
}

TEST(Oracle, RandomPolicies) {
  Policy empty = oracle::random_policy({1, 6, 0.0});
  EXPECT_EQ(empty.hasse_edge_count(), 0u);
  Policy full = oracle::random_policy({1, 6, 1.0});
  EXPECT_EQ(width(full), 1u);
  EXPECT_EQ(full.hasse_edge_count(), 5u);
  EXPECT_EQ(oracle::random_policy({42, 8, 0.4}), oracle::random_policy({42, 8, 0.4}));
  EXPECT_EQ(serialize_policy(oracle::random_policy({42, 8, 0.4})),
            serialize_policy(oracle::random_policy({42, 8, 0.4})));
  EXPECT_NE(oracle::random_policy({42, 8, 0.4}), oracle::random_policy({43, 8, 0.4}));
  for (const Policy& p : testing::small_corpus()) {
    for (UserCount u : p.user_counts()) {
      EXPECT_GE(u, 1u);
      EXPECT_LE(u, 5u);
    }
  }
  EXPECT_THROW(oracle::random_policy({1, 0, 0.5}), std::invalid_argument);
}

TEST(Oracle, ForestSecretsOfFixedPartitions) {
  Policy p = diamond();
  // Every label a root: each user holds its whole down-set.
  EXPECT_EQ(oracle::brute_forest_secrets(p, Forest(std::vector<std::optional<Label>>(4))),
            4u + 2u + 2u + 1u);
}

}  // namespace
}  // namespace pkeys
