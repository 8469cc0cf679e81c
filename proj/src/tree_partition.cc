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

#include "pkeys/tree_partition.h"

#include <algorithm>
#include <sstream>

#include "pkeys/errors.h"
#include "pkeys/matching.h"
#include "text_util.h"

namespace pkeys {

TreePartition::TreePartition(const Policy& p,
                             std::vector<std::optional<Label>> parent)
    : forest_(std::move(parent)) {
  if (forest_.size() != p.size()) {
    throw InvalidPartition("tree partition has " +
                           std::to_string(forest_.size()) + " labels, policy has " +
                           std::to_string(p.size()));
  }
  for (Label z = 0; z < p.size(); ++z) {
    if (auto y = forest_.parent(z); y && (*y >= p.size() || !p.covers(*y, z))) {
      throw InvalidPartition("(" + std::to_string(*y) + "," + std::to_string(z) +
                             ") is not a Hasse edge");
    }
  }
}

LabelSet gamma(const Policy& p, Label y, Label z) {
  if (!p.less(z, y)) {
    throw NotComparable("gamma(" + std::to_string(y) + "," + std::to_string(z) +
                        ") requires " + std::to_string(z) + " < " +
                        std::to_string(y));
  }
  Bits members = p.strictly_above(z);
  members.set(z);
  members -= p.strictly_above(y);
  members.reset(y);
  LabelSet out;
  for (auto x = members.find_first(); x != Bits::npos; x = members.find_next(x)) {
    out.push_back(static_cast<Label>(x));
  }
  return out;
}

// The up-set of y sits inside the up-set of z, so gamma's weight is a
// difference of cached up-set weights.
UserCount omega(const Policy& p, Label y, Label z) {
  if (!p.less(z, y)) return 0;
  return p.up_weight(z) - p.up_weight(y);
}

UserCount big_omega(const Policy& p, const TreePartition& t, Label z) {
  if (auto y = t.parent(z)) return omega(p, *y, z);
  return p.up_weight(z);
}

AnchorMap anchors(const Policy& p, const TreePartition& t) {
  return anchors(p, t.forest());
}

UserCount total_secrets(const Policy& p, const TreePartition& t,
                        const AnchorMap& a) {
  if (a.size() != t.forest().size()) {
    throw InconsistentAnchors("anchor map size does not match the partition");
  }
  return total_secrets(p, a);
}

namespace {

// Hasse parents of z attaining the least omega, ascending.
LabelSet cheapest_parents(const Policy& p, Label z) {
  LabelSet best;
  UserCount best_weight = 0;
  for (Label y : p.parents(z)) {
    UserCount w = omega(p, y, z);
    if (best.empty() || w < best_weight) {
      best.assign(1, y);
      best_weight = w;
    } else if (w == best_weight) {
      best.push_back(y);
    }
  }
  return best;
}

}  // namespace

TreePartition minimal_tree_partition(const Policy& p) {
  std::vector<std::optional<Label>> parent(p.size());
  for (Label z = 0; z < p.size(); ++z) {
    LabelSet best = cheapest_parents(p, z);
    if (!best.empty()) parent[z] = best.front();
  }
  return TreePartition(p, std::move(parent));
}

// Leaves of an out-forest are the labels that parent nobody, so minimizing
// them means maximizing the number of distinct labels used as parents. Each
// used parent can be charged to a distinct child, which is exactly a
// matching between candidate parents and children.
TreePartition optimal_tree_partition(const Policy& p) {
  const std::size_t n = p.size();
  std::vector<LabelSet> candidates(n);
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (Label z = 0; z < n; ++z) {
    candidates[z] = cheapest_parents(p, z);
    for (Label y : candidates[z]) adjacency[y].push_back(z);
  }
  BipartiteMatching matching(std::move(adjacency), n);

  std::vector<std::optional<Label>> parent(n);
  for (Label z = 0; z < n; ++z) {
    if (candidates[z].empty()) continue;
    if (auto y = matching.mate_of_right(z)) {
      parent[z] = static_cast<Label>(*y);
    } else {
      parent[z] = candidates[z].front();
    }
  }
  return TreePartition(p, std::move(parent));
}

std::string dump_tree_partition(const TreePartition& t) {
  std::ostringstream out;
  for (Label z = 0; z < t.forest().size(); ++z) {
    out << "t " << z << ' ';
    if (auto y = t.parent(z)) {
      out << *y;
    } else {
      out << '-';
    }
    out << '\n';
  }
  return out.str();
}

TreePartition parse_tree_partition(const Policy& p, std::string_view text) {
  std::vector<std::optional<Label>> parent(p.size());
  std::vector<bool> seen(p.size(), false);
  for_each_directive(text, [&](std::size_t line, const Tokens& tok) {
    if (tok[0] != "t" || tok.size() != 3) {
      throw SyntaxError(line, "expected 't <child> <parent|->'");
    }
    Label z = label_token(p, tok[1], line);
    if (seen[z]) throw SyntaxError(line, "label " + std::to_string(z) + " listed twice");
    seen[z] = true;
    if (tok[2] != "-") parent[z] = label_token(p, tok[2], line);
  });
  for (Label z = 0; z < p.size(); ++z) {
    if (!seen[z]) {
      throw InvalidPartition("label " + std::to_string(z) + " missing from tree partition");
    }
  }
  return TreePartition(p, std::move(parent));
}

}  // namespace pkeys
