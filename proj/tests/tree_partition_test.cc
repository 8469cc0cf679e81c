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

#include <set>

#include "pkeys/errors.h"
#include "pkeys/oracle.h"
#include "pkeys/tree_partition.h"
#include "support.h"

namespace pkeys {
namespace {

using testing::diamond;

struct IntervalEdge {
  std::size_t yi, yj, zi, zj;
  std::size_t gamma_size;
};

// Edge weights of the covering graph of I(5).
const IntervalEdge kI5Gamma[] = {
    {1, 5, 1, 4, 1}, {1, 5, 2, 5, 1}, {1, 4, 1, 3, 1}, {1, 4, 2, 4, 2},
    {2, 5, 2, 4, 2}, {2, 5, 3, 5, 1}, {1, 3, 1, 2, 1}, {1, 3, 2, 3, 3},
    {2, 4, 2, 3, 2}, {2, 4, 3, 4, 2}, {3, 5, 3, 4, 3}, {3, 5, 4, 5, 1},
    {1, 2, 1, 1, 1}, {1, 2, 2, 2, 4}, {2, 3, 2, 2, 2}, {2, 3, 3, 3, 3},
    {3, 4, 3, 3, 3}, {3, 4, 4, 4, 2}, {4, 5, 4, 4, 4}, {4, 5, 5, 5, 1},
};

TEST(TreePartition, IntervalFiveEdgeWeights) {
  Policy p = interval_poset(5);
  ASSERT_EQ(std::size(kI5Gamma), p.hasse_edge_count());
  for (const auto& e : kI5Gamma) {
    Label y = interval_label(5, e.yi, e.yj);
    Label z = interval_label(5, e.zi, e.zj);
    ASSERT_TRUE(p.covers(y, z));
    EXPECT_EQ(gamma(p, y, z).size(), e.gamma_size)
        << "[" << e.yi << "," << e.yj << "] > [" << e.zi << "," << e.zj << "]";
    EXPECT_EQ(omega(p, y, z), e.gamma_size);
  }
}

TEST(TreePartition, IntervalFiveMinimalTree) {
  Policy p = interval_poset(5);
  TreePartition t = minimal_tree_partition(p);
  auto L = [](std::size_t i, std::size_t j) { return interval_label(5, i, j); };
  // Child, parent pairs of the minimal tree; [1,5] is the only root.
  const std::pair<Label, Label> kEdges[] = {
      {L(1, 4), L(1, 5)}, {L(2, 5), L(1, 5)}, {L(1, 3), L(1, 4)},
      {L(2, 4), L(1, 4)}, {L(3, 5), L(2, 5)}, {L(1, 2), L(1, 3)},
      {L(2, 3), L(2, 4)}, {L(3, 4), L(2, 4)}, {L(4, 5), L(3, 5)},
      {L(1, 1), L(1, 2)}, {L(2, 2), L(2, 3)}, {L(3, 3), L(2, 3)},
      {L(4, 4), L(3, 4)}, {L(5, 5), L(4, 5)}};
  for (auto [child, parent] : kEdges) EXPECT_EQ(t.parent(child), parent);
  EXPECT_TRUE(t.is_maximal(L(1, 5)));

  const std::pair<Label, UserCount> kOmega[] = {
      {L(1, 1), 1}, {L(2, 2), 2}, {L(3, 3), 3}, {L(4, 4), 2}, {L(5, 5), 1},
      {L(1, 2), 1}, {L(2, 3), 2}, {L(3, 4), 2}, {L(4, 5), 1}, {L(1, 3), 1},
      {L(2, 4), 2}, {L(3, 5), 1}, {L(1, 4), 1}, {L(2, 5), 1}, {L(1, 5), 1}};
  UserCount sum = 0;
  for (auto [z, value] : kOmega) {
    EXPECT_EQ(big_omega(p, t, z), value);
    sum += big_omega(p, t, z);
  }
  EXPECT_EQ(sum, 22u);
  EXPECT_EQ(total_secrets(p, t, anchors(p, t)), 22u);
}

UserCount interval_tree_formula(std::size_t n) {
  std::size_t m = (n + 1) / 2;
  return n % 2 == 1 ? m * (m + 1) * (4 * m - 1) / 6 : m * (m + 1) * (4 * m + 5) / 6;
}

TEST(TreePartition, IntervalClosedForm) {
  for (std::size_t n = 1; n <= 25; ++n) {
    Policy p = interval_poset(n);
    TreePartition t = minimal_tree_partition(p);
    EXPECT_EQ(total_secrets(p, t, anchors(p, t)), interval_tree_formula(n)) << n;
  }
}

TEST(TreePartition, GammaOfDiamond) {
  Policy p = diamond();
  EXPECT_EQ(gamma(p, 1, 3), (LabelSet{2, 3}));
  EXPECT_EQ(gamma(p, 0, 1), (LabelSet{1}));
  EXPECT_EQ(omega(p, 0, 3), 3u);
  EXPECT_THROW(gamma(p, 1, 2), NotComparable);
}

TEST(TreePartition, GammaGrowsWithTheParent) {
  for (const Policy& p : testing::small_corpus()) {
    for (Label z = 0; z < p.size(); ++z) {
      for (Label y = 0; y < p.size(); ++y) {
        if (!p.less(z, y)) continue;
        LabelSet near = gamma(p, y, z);
        for (Label y2 = 0; y2 < p.size(); ++y2) {
          if (!p.less(y, y2)) continue;
          LabelSet far = gamma(p, y2, z);
          EXPECT_TRUE(std::includes(far.begin(), far.end(), near.begin(), near.end()));
          EXPECT_LT(omega(p, y, z), omega(p, y2, z));
        }
      }
    }
  }
}

TEST(TreePartition, RejectsNonCoveringParent) {
  Policy p = diamond();
  EXPECT_THROW(TreePartition(p, {std::nullopt, 0, 0, 0}), InvalidPartition);
  EXPECT_THROW(TreePartition(p, {std::nullopt, 0, 0}), InvalidPartition);
  EXPECT_NO_THROW(TreePartition(p, {std::nullopt, 0, 0, 2}));
}

// Anchor sets straight from the definition: the forest-highest element of
// the down-set of x among the forest ancestors of z.
AnchorMap anchors_by_definition(const Policy& p, const Forest& f) {
  AnchorMap out(p.size());
  for (Label x = 0; x < p.size(); ++x) {
    std::set<Label> s;
    for (Label z = 0; z < p.size(); ++z) {
      if (!p.less_equal(z, x)) continue;
      Label best = z;
      for (std::optional<Label> v = z; v; v = f.parent(*v)) {
        if (p.less_equal(*v, x)) best = *v;
      }
      s.insert(best);
    }
    out[x].assign(s.begin(), s.end());
  }
  return out;
}

TEST(TreePartition, AnchorsMatchDefinition) {
  for (const Policy& p : testing::small_corpus()) {
    oracle::enumerate_tree_partitions(p, [&](const TreePartition& t) {
      EXPECT_EQ(anchors(p, t), anchors_by_definition(p, t.forest()));
      return true;
    });
  }
}

bool valid_anchor_set(const Policy& p, const Forest& f, Label x, std::uint32_t mask) {
  for (Label u = 0; u < p.size(); ++u) {
    bool reached = false;
    for (Label z = 0; z < p.size(); ++z) {
      if ((mask >> z & 1) && f.forest_below(u, z)) reached = true;
    }
    if (p.less_equal(u, x) && !reached) return false;
    if (!p.less_equal(u, x) && reached) return false;
  }
  return true;
}

TEST(TreePartition, AnchorsAreContainedInEveryValidChoice) {
  for (const Policy& p : testing::small_corpus()) {
    if (p.size() > 5) continue;
    oracle::enumerate_tree_partitions(p, [&](const TreePartition& t) {
      AnchorMap a = anchors(p, t);
      for (Label x = 0; x < p.size(); ++x) {
        std::uint32_t phi = 0;
        for (Label z : a[x]) phi |= 1u << z;
        EXPECT_TRUE(valid_anchor_set(p, t.forest(), x, phi));
        for (std::uint32_t psi = 0; psi < (1u << p.size()); ++psi) {
          if (valid_anchor_set(p, t.forest(), x, psi)) {
            EXPECT_EQ(psi & phi, phi);
            EXPECT_TRUE(psi >> x & 1);
          }
        }
      }
      return true;
    });
  }
}

TEST(TreePartition, SecretsEqualSumOfOmega) {
  for (const Policy& p : testing::small_corpus()) {
    oracle::enumerate_tree_partitions(p, [&](const TreePartition& t) {
      UserCount sum = 0;
      for (Label z = 0; z < p.size(); ++z) sum += big_omega(p, t, z);
      EXPECT_EQ(total_secrets(p, t, anchors(p, t)), sum);
      return true;
    });
  }
}

TEST(TreePartition, MinimalTreeMatchesExhaustiveSearch) {
  for (const Policy& p : testing::small_corpus()) {
    TreePartition t = minimal_tree_partition(p);
    EXPECT_EQ(total_secrets(p, t, anchors(p, t)), oracle::brute_min_tree_secrets(p));
  }
}

TEST(TreePartition, OptimalTreeMinimizesLeaves) {
  for (const Policy& p : testing::small_corpus()) {
    TreePartition greedy = minimal_tree_partition(p);
    TreePartition best = optimal_tree_partition(p);
    EXPECT_EQ(total_secrets(p, best, anchors(p, best)),
              total_secrets(p, greedy, anchors(p, greedy)));
    EXPECT_LE(best.minimal_element_count(), greedy.minimal_element_count());
    EXPECT_EQ(best.minimal_element_count(),
              oracle::brute_min_leaves_of_minimal_trees(p));
  }
  Policy i5 = interval_poset(5);
  EXPECT_EQ(optimal_tree_partition(i5).minimal_element_count(),
            oracle::brute_min_leaves_of_minimal_trees(i5, {.max_labels = 15}));
}

TEST(TreePartition, DiamondValues) {
  Policy p = diamond();
  TreePartition t = minimal_tree_partition(p);
  EXPECT_EQ(t.parent(3), 1u);
  EXPECT_EQ(total_secrets(p, t, anchors(p, t)), 5u);
  EXPECT_EQ(anchors(p, t)[2], (LabelSet{2, 3}));
}

TEST(TreePartition, DumpRoundTrip) {
  Policy p = interval_poset(4);
  TreePartition t = minimal_tree_partition(p);
  std::string text = dump_tree_partition(t);
  EXPECT_EQ(parse_tree_partition(p, text), t);
  EXPECT_EQ(parse_tree_partition(diamond(), "t 0 -\nt 1 0\nt 2 -\nt 3 2\n"),
            TreePartition(diamond(), {std::nullopt, 0, std::nullopt, 2}));
  EXPECT_THROW(parse_tree_partition(diamond(), "t 0 -\nt 1 0\nt 2 0\n"), InvalidPartition);
  EXPECT_THROW(parse_tree_partition(diamond(), "t 0 -\nt 0 -\n"), SyntaxError);
  EXPECT_THROW(parse_tree_partition(diamond(), "t 0\n"), SyntaxError);
  EXPECT_THROW(parse_tree_partition(diamond(), "t 0 -\nt 1 0\nt 2 0\nt 3 0\n"),
               InvalidPartition);
}

}  // namespace
}  // namespace pkeys
