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

#ifndef PKEYS_MATCHING_H_
#define PKEYS_MATCHING_H_

#include <cstddef>
#include <optional>
#include <vector>

namespace pkeys {

// Maximum bipartite matching (Hopcroft-Karp). Left vertices are
// 0..adjacency.size()-1, right vertices 0..right_count-1. Adjacency lists
// are scanned in order, so sorted input gives a deterministic matching.
class BipartiteMatching {
 public:
  BipartiteMatching(std::vector<std::vector<std::size_t>> adjacency,
                    std::size_t right_count);

  std::size_t size() const { return size_; }
  std::optional<std::size_t> mate_of_left(std::size_t left) const;
  std::optional<std::size_t> mate_of_right(std::size_t right) const;

 private:
  bool bfs();
  bool dfs(std::size_t left);

  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> left_mate_;
  std::vector<std::size_t> right_mate_;
  std::vector<std::size_t> level_;
  std::vector<std::size_t> next_edge_;
  std::size_t size_ = 0;
};

}  // namespace pkeys

#endif  // PKEYS_MATCHING_H_
