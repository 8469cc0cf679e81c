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

#include "pkeys/forest.h"

#include <algorithm>

#include "pkeys/checked.h"
#include "pkeys/errors.h"

namespace pkeys {

std::vector<Label> Forest::roots() const {
  std::vector<Label> out;
  for (Label x = 0; x < size(); ++x) {
    if (is_root(x)) out.push_back(x);
  }
  return out;
}

std::vector<std::vector<Label>> Forest::children() const {
  std::vector<std::vector<Label>> out(size());
  for (Label x = 0; x < size(); ++x) {
    if (parent_[x]) out[*parent_[x]].push_back(x);
  }
  return out;
}

std::vector<Label> Forest::leaves() const {
  std::vector<bool> has_child(size(), false);
  for (const auto& par : parent_) {
    if (par) has_child[*par] = true;
  }
  std::vector<Label> out;
  for (Label x = 0; x < size(); ++x) {
    if (!has_child[x]) out.push_back(x);
  }
  return out;
}

bool Forest::forest_below(Label y, Label z) const {
  for (std::optional<Label> v = y; v; v = parent_[*v]) {
    if (*v == z) return true;
  }
  return false;
}

std::size_t Forest::depth(Label x) const {
  std::size_t d = 0;
  for (std::optional<Label> v = parent_[x]; v; v = parent_[*v]) ++d;
  return d;
}

std::size_t Forest::max_depth() const {
  // Memoized so long chains stay linear.
  std::vector<std::size_t> memo(size(), static_cast<std::size_t>(-1));
  std::size_t best = 0;
  std::vector<Label> stack;
  for (Label x = 0; x < size(); ++x) {
    Label v = x;
    while (memo[v] == static_cast<std::size_t>(-1) && parent_[v]) {
      stack.push_back(v);
      v = *parent_[v];
    }
    if (memo[v] == static_cast<std::size_t>(-1)) memo[v] = 0;
    while (!stack.empty()) {
      memo[stack.back()] = memo[*parent_[stack.back()]] + 1;
      stack.pop_back();
    }
    best = std::max(best, memo[x]);
  }
  return best;
}

LabelSet Forest::descendants(Label x) const {
  LabelSet out;
  for (Label y = 0; y < size(); ++y) {
    if (forest_below(y, x)) out.push_back(y);
  }
  return out;
}

void Forest::validate_against(const Policy& p) const {
  if (size() != p.size()) {
    throw InvalidPartition("forest has " + std::to_string(size()) +
                           " labels, policy has " + std::to_string(p.size()));
  }
  for (Label z = 0; z < size(); ++z) {
    if (!parent_[z]) continue;
    Label y = *parent_[z];
    if (y >= p.size() || !p.less(z, y)) {
      throw InvalidPartition("forest parent " + std::to_string(y) + " of " +
                             std::to_string(z) + " is not above it");
    }
  }
}

AnchorMap anchors(const Policy& p, const Forest& f) {
  f.validate_against(p);
  const std::size_t n = p.size();
  AnchorMap out(n);
  for (Label x = 0; x < n; ++x) {
    LabelSet& phi = out[x];
    const Bits& below = p.strictly_below(x);
    bool self_added = false;
    for (auto z = below.find_first(); z != Bits::npos; z = below.find_next(z)) {
      if (!self_added && z > x) {
        phi.push_back(x);
        self_added = true;
      }
      std::optional<Label> par = f.parent(static_cast<Label>(z));
      if (!par || !p.less_equal(*par, x)) phi.push_back(static_cast<Label>(z));
    }
    if (!self_added) phi.push_back(x);
  }
  return out;
}

UserCount total_secrets(const Policy& p, const AnchorMap& a) {
  UserCount total = 0;
  for (Label x = 0; x < p.size(); ++x) {
    total = checked_add(total, checked_mul<UserCount>(a[x].size(), p.users(x)));
  }
  return total;
}

}  // namespace pkeys
