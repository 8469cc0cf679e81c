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

#ifndef PKEYS_TESTS_SUPPORT_H_
#define PKEYS_TESTS_SUPPORT_H_

#include <cstdint>
#include <vector>

#include "pkeys/oracle.h"
#include "pkeys/policy.h"

namespace pkeys::testing {

// 0 on top, 1 and 2 in the middle, 3 at the bottom.
inline Policy diamond(std::map<Label, UserCount> users = {}) {
  return Policy::from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, users);
}

// 0 > 1 > ... > n-1.
inline Policy chain_poset(std::size_t n) {
  std::vector<Edge> edges;
  for (Label x = 1; x < n; ++x) edges.push_back({x - 1, x});
  return Policy::from_edges(n, edges);
}

inline Policy antichain(std::size_t n) { return Policy::from_edges(n, {}); }

// Seeded random policies with 1 to 6 labels and 1 to 5 users per label.
inline std::vector<Policy> small_corpus(std::size_t count = 240) {
  static constexpr double kDensity[] = {0.15, 0.3, 0.5, 0.7, 0.9};
  std::vector<Policy> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    oracle::PolicyGenerator gen{0x5eed0000 + i, 1 + i % 6, kDensity[(i / 6) % 5]};
    out.push_back(oracle::random_policy(gen));
  }
  return out;
}

}  // namespace pkeys::testing

#endif  // PKEYS_TESTS_SUPPORT_H_
