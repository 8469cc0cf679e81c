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

#include "pkeys/analysis.h"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "pkeys/chain_partition.h"
#include "pkeys/tree_partition.h"

namespace pkeys {

namespace {

SchemeMetrics metrics_of(const Policy& p, const Forest& f, const AnchorMap& a) {
  SchemeMetrics m;
  m.total_secrets = total_secrets(p, a);
  for (const LabelSet& s : a) {
    m.max_secrets_per_user = std::max(m.max_secrets_per_user, s.size());
  }
  m.max_derivation_length = f.max_depth();
  m.parts = f.roots().size();
  return m;
}

// Edges on the longest path of the covering graph.
std::size_t longest_hasse_path(const Policy& p) {
  std::vector<std::size_t> height(p.size(), 0);
  // A linear extension lists every label after all labels above it.
  for (Label x : linear_extension(p)) {
    for (Label y : p.parents(x)) height[x] = std::max(height[x], height[y] + 1);
  }
  return p.size() == 0 ? 0 : *std::max_element(height.begin(), height.end());
}

}  // namespace

PolicyReport analyze_policy(const Policy& p) {
  PolicyReport r;
  r.labels = p.size();
  r.hasse_edges = p.hasse_edge_count();
  r.closure_pairs = p.closure_pair_count();
  r.width = width(p);
  r.longest_hasse_path = longest_hasse_path(p);
  for (UserCount u : p.user_counts()) r.users += u;

  TreePartition t = minimal_tree_partition(p);
  r.tree = metrics_of(p, t.forest(), anchors(p, t));

  ChainPartition c = minimal_chain_partition(p);
  Forest cf = c.forest();
  r.chain = metrics_of(p, cf, phi_chain(p, c));
  return r;
}

std::string format_report(const PolicyReport& r) {
  std::ostringstream out;
  auto field = [&](std::string_view name, std::size_t value) {
    out << std::left << std::setw(18) << name << value << '\n';
  };
  field("labels", r.labels);
  field("users", r.users);
  field("hasse edges", r.hasse_edges);
  field("closure pairs", r.closure_pairs);
  field("width", r.width);
  field("longest path", r.longest_hasse_path);
  out << '\n';
  auto row = [&](std::string_view name, auto secrets, auto per_user,
                 auto derivation, auto public_items, auto parts) {
    out << std::left << std::setw(14) << name << std::right << std::setw(10)
        << secrets << std::setw(10) << per_user << std::setw(12) << derivation
        << std::setw(10) << public_items << std::setw(8) << parts << '\n';
  };
  row("scheme", "secrets", "max/user", "max steps", "public", "parts");
  row("tree", r.tree.total_secrets, r.tree.max_secrets_per_user,
      r.tree.max_derivation_length, 0, r.tree.parts);
  row("chain", r.chain.total_secrets, r.chain.max_secrets_per_user,
      r.chain.max_derivation_length, 0, r.chain.parts);
  // Public-information schemes: one secret per user, one public item per edge.
  const std::size_t one = r.labels == 0 ? 0 : 1;
  row("single-step", r.users, one, r.closure_pairs == 0 ? 0 : 1,
      r.closure_pairs, "-");
  row("multi-step", r.users, one, r.longest_hasse_path, r.hasse_edges, "-");
  return out.str();
}

}  // namespace pkeys
