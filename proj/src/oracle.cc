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

#include "pkeys/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "pkeys/errors.h"

namespace pkeys::oracle {

namespace {

void require_labels(const Policy& p, std::size_t cap, const char* what) {
  if (p.size() > cap) {
    throw TooLarge(std::string(what) + ": " + std::to_string(p.size()) +
                   " labels exceeds the cap of " + std::to_string(cap));
  }
}

}  // namespace

void enumerate_tree_partitions(const Policy& p, const Visitor<TreePartition>& visit,
                               const Caps& caps) {
  require_labels(p, caps.max_labels, "tree partition enumeration");
  const std::size_t n = p.size();
  // choice[z] == 0 means no parent, k > 0 selects parents(z)[k - 1].
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    std::vector<std::optional<Label>> parent(n);
    for (Label z = 0; z < n; ++z) {
      if (choice[z] > 0) parent[z] = p.parents(z)[choice[z] - 1];
    }
    if (!visit(TreePartition(p, std::move(parent)))) return;
    std::size_t z = 0;
    while (z < n && choice[z] == p.parents(static_cast<Label>(z)).size()) {
      choice[z] = 0;
      ++z;
    }
    if (z == n) return;
    ++choice[z];
  }
}

void enumerate_chain_partitions(const Policy& p,
                                const Visitor<ChainPartition>& visit,
                                const Caps& caps) {
  require_labels(p, std::min<std::size_t>(caps.max_labels, 63),
                 "chain partition enumeration");
  const std::size_t n = p.size();
  std::vector<std::vector<Label>> blocks;
  bool stopped = false;

  auto recurse = [&](auto&& self, std::uint64_t uncovered) -> void {
    if (stopped) return;
    if (uncovered == 0) {
      if (!visit(ChainPartition(p, blocks))) stopped = true;
      return;
    }
    Label u = static_cast<Label>(std::countr_zero(uncovered));
    std::vector<Label> candidates;
    for (Label v = u + 1; v < n; ++v) {
      if ((uncovered >> v & 1) && p.comparable(u, v)) candidates.push_back(v);
    }
    const std::size_t k = candidates.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<Label> block{u};
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) block.push_back(candidates[i]);
      }
      bool is_chain = true;
      for (std::size_t i = 0; i < block.size() && is_chain; ++i) {
        for (std::size_t j = i + 1; j < block.size() && is_chain; ++j) {
          is_chain = p.comparable(block[i], block[j]);
        }
      }
      if (!is_chain) continue;
      std::sort(block.begin(), block.end(),
                [&](Label a, Label b) { return p.less(b, a); });
      std::uint64_t rest = uncovered;
      for (Label v : block) rest &= ~(std::uint64_t{1} << v);
      blocks.push_back(std::move(block));
      self(self, rest);
      blocks.pop_back();
      if (stopped) return;
    }
  };
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  recurse(recurse, all);
}

void enumerate_integral_flows(const Network& net, const Visitor<Flow>& visit,
                              const Caps& caps) {
  FlowUnits units = 0;
  for (const Arc& a : net.arcs) units += a.upper;
  if (units > caps.max_flow_units) {
    throw TooLarge("flow enumeration: " + std::to_string(units) +
                   " units of capacity exceeds the cap of " +
                   std::to_string(caps.max_flow_units));
  }
  Flow f(net.arcs.size(), 0);
  std::vector<FlowUnits> excess(net.node_count, 0);
  bool stopped = false;
  auto recurse = [&](auto&& self, std::size_t e) -> void {
    if (stopped) return;
    if (e == net.arcs.size()) {
      for (std::size_t v = 0; v < net.node_count; ++v) {
        if (excess[v] != net.balance[v]) return;
      }
      if (!visit(f)) stopped = true;
      return;
    }
    const Arc& a = net.arcs[e];
    for (FlowUnits value = a.lower; value <= a.upper && !stopped; ++value) {
      f[e] = value;
      excess[a.tail] += value;
      excess[a.head] -= value;
      self(self, e + 1);
      excess[a.tail] -= value;
      excess[a.head] += value;
    }
    f[e] = 0;
  };
  recurse(recurse, 0);
}

UserCount brute_forest_secrets(const Policy& p, const Forest& f) {
  UserCount total = 0;
  for (Label x = 0; x < p.size(); ++x) {
    std::set<Label> issued;
    for (Label z = 0; z < p.size(); ++z) {
      if (!p.less_equal(z, x)) continue;
      // Forest ancestors of z form a chain; keep the highest one below x.
      std::optional<Label> anchor;
      for (std::optional<Label> v = z; v; v = f.parent(*v)) {
        if (p.less_equal(*v, x)) anchor = *v;
      }
      issued.insert(*anchor);
    }
    total += issued.size() * p.users(x);
  }
  return total;
}

UserCount brute_min_tree_secrets(const Policy& p, const Caps& caps) {
  UserCount best = std::numeric_limits<UserCount>::max();
  enumerate_tree_partitions(p, [&](const TreePartition& t) {
    best = std::min(best, brute_forest_secrets(p, t.forest()));
    return true;
  }, caps);
  return best;
}

std::size_t brute_min_leaves_of_minimal_trees(const Policy& p, const Caps& caps) {
  UserCount best_secrets = std::numeric_limits<UserCount>::max();
  std::size_t best_leaves = std::numeric_limits<std::size_t>::max();
  enumerate_tree_partitions(p, [&](const TreePartition& t) {
    UserCount s = brute_forest_secrets(p, t.forest());
    std::size_t leaves = t.forest().leaf_count();
    if (s < best_secrets) {
      best_secrets = s;
      best_leaves = leaves;
    } else if (s == best_secrets) {
      best_leaves = std::min(best_leaves, leaves);
    }
    return true;
  }, caps);
  return best_leaves;
}

ChainOptimum brute_min_chain_secrets(const Policy& p, const Caps& caps) {
  ChainOptimum best{std::numeric_limits<UserCount>::max(),
                    std::numeric_limits<std::size_t>::max()};
  enumerate_chain_partitions(p, [&](const ChainPartition& c) {
    UserCount s = brute_forest_secrets(p, c.forest());
    if (s < best.secrets || (s == best.secrets && c.chain_count() < best.chain_count)) {
      best = {s, c.chain_count()};
    }
    return true;
  }, caps);
  return best;
}

std::size_t brute_width(const Policy& p, const Caps& caps) {
  require_labels(p, caps.max_width_labels, "antichain search");
  const std::size_t n = p.size();
  std::size_t best = 0;
  std::vector<Label> chosen;
  auto recurse = [&](auto&& self, Label next) -> void {
    best = std::max(best, chosen.size());
    if (chosen.size() + (n - next) <= best) return;
    for (Label v = next; v < n; ++v) {
      bool free = std::none_of(chosen.begin(), chosen.end(),
                               [&](Label c) { return p.comparable(c, v); });
      if (!free) continue;
      chosen.push_back(v);
      self(self, v + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  return best;
}

std::optional<Cost> brute_min_flow_cost(const Network& net, const Caps& caps) {
  std::optional<Cost> best;
  enumerate_integral_flows(net, [&](const Flow& f) {
    Cost c = 0;
    for (std::size_t e = 0; e < f.size(); ++e) c += net.arcs[e].cost * f[e];
    if (!best || c < *best) best = c;
    return true;
  }, caps);
  return best;
}

Policy random_policy(const PolicyGenerator& gen) {
  if (gen.n == 0) throw std::invalid_argument("random_policy needs n >= 1");
  std::mt19937_64 rng(gen.seed);
  auto keep = [&]() {
    std::uint64_t draw = rng();
    if (gen.density <= 0.0) return false;
    if (gen.density >= 1.0) return true;
    return draw < static_cast<std::uint64_t>(std::ldexp(gen.density, 64));
  };
  std::vector<Edge> edges;
  for (Label i = 0; i < gen.n; ++i) {
    for (Label j = 0; j < i; ++j) {
      if (keep()) edges.push_back({i, j});
    }
  }
  std::map<Label, UserCount> users;
  for (Label x = 0; x < gen.n; ++x) users[x] = 1 + rng() % 5;
  return Policy::from_edges(gen.n, edges, users);
}

}  // namespace pkeys::oracle
