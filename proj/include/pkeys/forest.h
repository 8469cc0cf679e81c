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

#ifndef PKEYS_FOREST_H_
#define PKEYS_FOREST_H_

#include <optional>
#include <vector>

#include "pkeys/policy.h"

namespace pkeys {

// An out-forest over the labels of a policy: each label has at most one
// parent, and every parent is strictly above its child in the policy. Tree
// partitions and chain partitions both present themselves as a Forest to
// the anchor computation and the key derivation scheme.
class Forest {
 public:
  Forest() = default;
  explicit Forest(std::vector<std::optional<Label>> parent)
      : parent_(std::move(parent)) {}

  std::size_t size() const { return parent_.size(); }
  std::optional<Label> parent(Label x) const { return parent_[x]; }
  bool is_root(Label x) const { return !parent_[x].has_value(); }
  const std::vector<std::optional<Label>>& parents() const { return parent_; }

  std::vector<Label> roots() const;
  std::vector<std::vector<Label>> children() const;
  // Labels with no forest children.
  std::vector<Label> leaves() const;
  std::size_t leaf_count() const { return leaves().size(); }

  // True if y is reachable from z by following parent links downward,
  // i.e. y <=_forest z. Reflexive.
  bool forest_below(Label y, Label z) const;
  // Number of parent links from x to its root.
  std::size_t depth(Label x) const;
  std::size_t max_depth() const;
  // x together with all its forest descendants, sorted.
  LabelSet descendants(Label x) const;

  // Throws InvalidPartition unless the forest has one entry per label of p
  // and every parent link (par(z), z) satisfies z < par(z) in p.
  void validate_against(const Policy& p) const;

  friend bool operator==(const Forest&, const Forest&) = default;

 private:
  std::vector<std::optional<Label>> parent_;
};

// phi(x) for every label: the anchors through which x's users enter each
// derivation chain. Entry x is sorted ascending.
using AnchorMap = std::vector<LabelSet>;

// The minimal anchor map of a forest: z is an anchor of x iff z = x, or
// z < x and z is a forest root, or z < x and x is not above par(z).
// O(n^2) given the closure bit matrix.
AnchorMap anchors(const Policy& p, const Forest& f);

// Sum over x of |a(x)| * |U_x|.
UserCount total_secrets(const Policy& p, const AnchorMap& a);

}  // namespace pkeys

#endif  // PKEYS_FOREST_H_
