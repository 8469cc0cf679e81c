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

#include "pkeys/matching.h"

#include <limits>
#include <queue>

namespace pkeys {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}  // namespace

BipartiteMatching::BipartiteMatching(
    std::vector<std::vector<std::size_t>> adjacency, std::size_t right_count)
    : adjacency_(std::move(adjacency)),
      left_mate_(adjacency_.size(), kNone),
      right_mate_(right_count, kNone),
      level_(adjacency_.size()),
      next_edge_(adjacency_.size()) {
  while (bfs()) {
    std::fill(next_edge_.begin(), next_edge_.end(), 0);
    for (std::size_t u = 0; u < adjacency_.size(); ++u) {
      if (left_mate_[u] == kNone && dfs(u)) ++size_;
    }
  }
}

// Layers the free left vertices at level 0; returns whether some free right
// vertex is reachable by an alternating path.
bool BipartiteMatching::bfs() {
  std::queue<std::size_t> queue;
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    if (left_mate_[u] == kNone) {
      level_[u] = 0;
      queue.push(u);
    } else {
      level_[u] = kNone;
    }
  }
  bool found = false;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v : adjacency_[u]) {
      std::size_t w = right_mate_[v];
      if (w == kNone) {
        found = true;
      } else if (level_[w] == kNone) {
        level_[w] = level_[u] + 1;
        queue.push(w);
      }
    }
  }
  return found;
}

bool BipartiteMatching::dfs(std::size_t u) {
  for (std::size_t& i = next_edge_[u]; i < adjacency_[u].size(); ++i) {
    std::size_t v = adjacency_[u][i];
    std::size_t w = right_mate_[v];
    if (w == kNone || (level_[w] == level_[u] + 1 && dfs(w))) {
      left_mate_[u] = v;
      right_mate_[v] = u;
      ++i;
      return true;
    }
  }
  level_[u] = kNone;
  return false;
}

std::optional<std::size_t> BipartiteMatching::mate_of_left(
    std::size_t left) const {
  if (left_mate_[left] == kNone) return std::nullopt;
  return left_mate_[left];
}

std::optional<std::size_t> BipartiteMatching::mate_of_right(
    std::size_t right) const {
  if (right_mate_[right] == kNone) return std::nullopt;
  return right_mate_[right];
}

}  // namespace pkeys
