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

#include "pkeys/chain_partition.h"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pkeys/checked.h"
#include "pkeys/errors.h"
#include "text_util.h"

namespace pkeys {

ChainPartition::ChainPartition(const Policy& p,
                               std::vector<std::vector<Label>> chains)
    : label_count_(p.size()), chains_(std::move(chains)) {
  std::vector<bool> seen(p.size(), false);
  std::size_t covered = 0;
  for (const auto& chain : chains_) {
    if (chain.empty()) throw InvalidPartition("empty chain");
    for (std::size_t i = 0; i < chain.size(); ++i) {
      Label x = chain[i];
      if (x >= p.size()) throw InvalidPartition("label " + std::to_string(x) + " out of range");
      if (seen[x]) throw InvalidPartition("label " + std::to_string(x) + " in two chains");
      seen[x] = true;
      ++covered;
      if (i > 0 && !p.less(x, chain[i - 1])) {
        throw InvalidPartition(std::to_string(x) + " is not below " +
                               std::to_string(chain[i - 1]));
      }
    }
  }
  if (covered != p.size()) throw InvalidPartition("chains do not cover every label");
}

LabelSet ChainPartition::bottoms() const {
  LabelSet out;
  for (const auto& chain : chains_) out.push_back(chain.back());
  std::sort(out.begin(), out.end());
  return out;
}

Forest ChainPartition::forest() const {
  std::vector<std::optional<Label>> parent(label_count_);
  for (const auto& chain : chains_) {
    for (std::size_t i = 1; i < chain.size(); ++i) parent[chain[i]] = chain[i - 1];
  }
  return Forest(std::move(parent));
}

UserCount chain_secrets(const Policy& p, const ChainPartition& c) {
  UserCount total = 0;
  for (Label b : c.bottoms()) total = checked_add(total, p.up_weight(b));
  return total;
}

AnchorMap phi_chain(const Policy& p, const ChainPartition& c) {
  return anchors(p, c.forest());
}

Network build_chain_network(const Policy& p, std::size_t w) {
  const std::size_t n = p.size();
  const ChainNetworkLayout layout{n};
  Network net;
  net.node_count = 2 * n + 2;
  net.balance.assign(net.node_count, 0);
  net.balance[layout.source()] = static_cast<FlowUnits>(w);
  net.balance[layout.sink()] = -static_cast<FlowUnits>(w);
  for (Label x = 0; x < n; ++x) net.add_arc(layout.in(x), layout.out(x), 1, 1, 0);
  for (Label x = 0; x < n; ++x) {
    const Bits& below = p.strictly_below(x);
    for (auto y = below.find_first(); y != Bits::npos; y = below.find_next(y)) {
      net.add_arc(layout.out(x), layout.in(static_cast<Label>(y)), 0, 1, 0);
    }
  }
  for (Label x = 0; x < n; ++x) net.add_arc(layout.source(), layout.in(x), 0, 1, 0);
  for (Label x = 0; x < n; ++x) {
    UserCount weight = p.up_weight(x);
    if (weight > static_cast<UserCount>(std::numeric_limits<Cost>::max())) {
      throw std::overflow_error("up-set weight does not fit a flow cost");
    }
    net.add_arc(layout.out(x), layout.sink(), 0, 1, static_cast<Cost>(weight));
  }
  return net;
}

ChainPartition flow_to_chain_partition(const Policy& p, const Network& net,
                                       const Flow& f) {
  const std::size_t n = p.size();
  if (net.node_count != 2 * n + 2 || f.size() != net.arcs.size()) {
    throw MalformedFlow("flow does not belong to this policy's chain network");
  }
  constexpr Label kNone = std::numeric_limits<Label>::max();
  std::vector<Label> next(n, kNone);
  std::vector<Label> prev(n, kNone);
  for (std::size_t e = 0; e < net.arcs.size(); ++e) {
    const Arc& a = net.arcs[e];
    if (a.tail >= 2 * n || a.head >= 2 * n || a.tail % 2 != 1 || a.head % 2 != 0) {
      continue;  // only x_out -> y_in arcs carry chain links
    }
    if (f[e] == 0) continue;
    if (f[e] != 1) throw MalformedFlow("chain link carries more than one unit");
    Label x = static_cast<Label>(a.tail / 2);
    Label y = static_cast<Label>(a.head / 2);
    if (!p.less(y, x)) throw MalformedFlow("chain link between incomparable labels");
    if (next[x] != kNone || prev[y] != kNone) {
      throw MalformedFlow("chain links do not form vertex-disjoint paths");
    }
    next[x] = y;
    prev[y] = x;
  }
  std::vector<std::vector<Label>> chains;
  std::size_t covered = 0;
  for (Label x = 0; x < n; ++x) {
    if (prev[x] != kNone) continue;
    auto& chain = chains.emplace_back();
    for (Label v = x; v != kNone; v = next[v]) {
      chain.push_back(v);
      ++covered;
    }
  }
  if (covered != n) throw MalformedFlow("chain links contain a cycle");
  return ChainPartition(p, std::move(chains));
}

ChainPartition minimal_chain_partition(const Policy& p) {
  const Network net = build_chain_network(p, width(p));
  return flow_to_chain_partition(p, net, min_cost_flow(net));
}

std::string dump_chain_partition(const ChainPartition& c) {
  std::ostringstream out;
  for (const auto& chain : c.chains()) {
    out << 'c';
    for (std::size_t i = 0; i < chain.size(); ++i) {
      out << (i == 0 ? " " : " > ") << chain[i];
    }
    out << '\n';
  }
  return out.str();
}

ChainPartition parse_chain_partition(const Policy& p, std::string_view text) {
  std::vector<std::vector<Label>> chains;
  for_each_directive(text, [&](std::size_t line, const Tokens& tok) {
    if (tok[0] != "c" || tok.size() % 2 != 0) {
      throw SyntaxError(line, "expected 'c <top> > ... > <bottom>'");
    }
    auto& chain = chains.emplace_back();
    for (std::size_t i = 1; i < tok.size(); ++i) {
      if (i % 2 == 0) {
        if (tok[i] != ">") throw SyntaxError(line, "expected '>' between chain labels");
      } else {
        chain.push_back(label_token(p, tok[i], line));
      }
    }
  });
  return ChainPartition(p, std::move(chains));
}

}  // namespace pkeys
