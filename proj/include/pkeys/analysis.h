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

#ifndef PKEYS_ANALYSIS_H_
#define PKEYS_ANALYSIS_H_

#include <cstddef>
#include <string>

#include "pkeys/policy.h"

namespace pkeys {

struct SchemeMetrics {
  UserCount total_secrets = 0;
  std::size_t max_secrets_per_user = 0;
  std::size_t max_derivation_length = 0;
  std::size_t parts = 0;  // trees (tree scheme) or chains (chain scheme)
};

// Structural numbers of a policy and the cost of both public-information
// free schemes built from it.
struct PolicyReport {
  std::size_t labels = 0;
  std::size_t hasse_edges = 0;
  std::size_t closure_pairs = 0;
  std::size_t width = 0;
  std::size_t longest_hasse_path = 0;
  UserCount users = 0;
  SchemeMetrics tree;
  SchemeMetrics chain;
};

PolicyReport analyze_policy(const Policy& p);
std::string format_report(const PolicyReport& r);

}  // namespace pkeys

#endif  // PKEYS_ANALYSIS_H_
