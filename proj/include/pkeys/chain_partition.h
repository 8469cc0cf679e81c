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

#ifndef PKEYS_CHAIN_PARTITION_H_
#define PKEYS_CHAIN_PARTITION_H_

#include <string>
#include <string_view>
#include <vector>

#include "pkeys/forest.h"
#include "pkeys/netflow.h"
#include "pkeys/policy.h"

namespace pkeys {

// Disjoint chains covering every label. Each chain is listed top to bottom
// and consecutive members are comparable in the closure (not necessarily
// Hasse edges).
class ChainPartition {
 public:
  // Throws InvalidPartition if the chains do not cover the labels exactly
  // once or a chain is not strictly descending.
  ChainPartition(const Policy& p, std::vector<std::vector<Label>> chains);

  const std::vector<std::vector<Label>>& chains() const { return chains_; }
  std::size_t chain_count() const { return chains_.size(); }
  LabelSet bottoms() const;
  // Each chain member's parent is its predecessor in the chain.
  Forest forest() const;

  friend bool operator==(const ChainPartition&, const ChainPartition&) = default;

 private:
  std::size_t label_count_ = 0;
  std::vector<std::vector<Label>> chains_;
};

// Total secrets from the chain bottoms alone: sum over chains of the user
// weight of the up-set of the chain's bottom.
UserCount chain_secrets(const Policy& p, const ChainPartition& c);

// Anchor map of the chain forest; |phi(x)| never exceeds the chain count.
AnchorMap phi_chain(const Policy& p, const ChainPartition& c);

// Node layout of the chain network.
struct ChainNetworkLayout {
  std::size_t label_count;
  std::size_t in(Label x) const { return 2 * static_cast<std::size_t>(x); }
  std::size_t out(Label x) const { return 2 * static_cast<std::size_t>(x) + 1; }
  std::size_t source() const { return 2 * label_count; }
  std::size_t sink() const { return 2 * label_count + 1; }
};

// Vertex-split network: x_in -> x_out with l = u = 1; x_out -> y_in for every
// y < x; s -> x_in; x_out -> t with cost equal to the up-set weight of x;
// s emits w units and t absorbs them.
Network build_chain_network(const Policy& p, std::size_t w);

// Reads the chains off the unit x_out -> y_in arcs of a feasible flow.
// Throws MalformedFlow if they do not form vertex-disjoint paths.
ChainPartition flow_to_chain_partition(const Policy& p, const Network& net,
                                       const Flow& f);

// A chain partition with exactly width(p) chains whose secret count is
// minimum over all chain partitions.
ChainPartition minimal_chain_partition(const Policy& p);

// `c <top> > ... > <bottom>` per chain.
std::string dump_chain_partition(const ChainPartition& c);
ChainPartition parse_chain_partition(const Policy& p, std::string_view text);

}  // namespace pkeys

#endif  // PKEYS_CHAIN_PARTITION_H_
