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

#ifndef PKEYS_TREE_PARTITION_H_
#define PKEYS_TREE_PARTITION_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pkeys/forest.h"
#include "pkeys/policy.h"

namespace pkeys {

// A tree partition: an out-forest whose edges are all Hasse edges of the
// policy.
class TreePartition {
 public:
  // Throws InvalidPartition if some (parent, child) is not a covering pair.
  TreePartition(const Policy& p, std::vector<std::optional<Label>> parent);

  const Forest& forest() const { return forest_; }
  std::optional<Label> parent(Label x) const { return forest_.parent(x); }
  bool is_maximal(Label x) const { return forest_.is_root(x); }
  std::size_t minimal_element_count() const { return forest_.leaf_count(); }

  friend bool operator==(const TreePartition&, const TreePartition&) = default;

 private:
  Forest forest_;
};

// gamma(y, z) = {x : x >= z and not x >= y}. Throws NotComparable unless
// z < y.
LabelSet gamma(const Policy& p, Label y, Label z);

// User-weighted size of gamma(y, z); 0 when z is not below y.
UserCount omega(const Policy& p, Label y, Label z);

// Number of users that need the secret of z: the whole up-set weight when z
// is a root of t, omega(par(z), z) otherwise.
UserCount big_omega(const Policy& p, const TreePartition& t, Label z);

AnchorMap anchors(const Policy& p, const TreePartition& t);
UserCount total_secrets(const Policy& p, const TreePartition& t,
                        const AnchorMap& a);

// Greedy minimal tree partition: every non-maximal z takes the Hasse parent
// of least omega (lowest index on ties). Minimizes the total number of
// issued secrets over all tree partitions.
TreePartition minimal_tree_partition(const Policy& p);

// Among the minimal tree partitions, one with the fewest minimal elements.
// Parent candidates are restricted to the least-omega Hasse parents; a
// maximum matching between candidate parents and children decides which
// parents become internal nodes.
TreePartition optimal_tree_partition(const Policy& p);

// `t <child> <parent|->` per label.
std::string dump_tree_partition(const TreePartition& t);
TreePartition parse_tree_partition(const Policy& p, std::string_view text);

}  // namespace pkeys

#endif  // PKEYS_TREE_PARTITION_H_
