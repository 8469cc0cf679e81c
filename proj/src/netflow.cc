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

#include "pkeys/netflow.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "pkeys/checked.h"
#include "pkeys/errors.h"

namespace pkeys {

std::size_t Network::add_arc(std::size_t tail, std::size_t head,
                             FlowUnits lower, FlowUnits upper, Cost cost) {
  arcs.push_back({tail, head, lower, upper, cost});
  return arcs.size() - 1;
}

void Network::validate() const {
  if (balance.size() != node_count) {
    throw std::invalid_argument("balance must have one entry per node");
  }
  FlowUnits total = 0;
  for (FlowUnits b : balance) total = checked_add(total, b);
  if (total != 0) throw std::invalid_argument("balances must sum to zero");
  for (const Arc& a : arcs) {
    if (a.tail >= node_count || a.head >= node_count) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    if (a.lower < 0 || a.upper < a.lower) {
      throw std::invalid_argument("arc bounds must satisfy 0 <= l <= u");
    }
  }
}

bool is_feasible(const Network& net, const Flow& f) {
  if (f.size() != net.arcs.size()) return false;
  std::vector<FlowUnits> excess(net.node_count, 0);
  for (std::size_t e = 0; e < f.size(); ++e) {
    const Arc& a = net.arcs[e];
    if (f[e] < a.lower || f[e] > a.upper) return false;
    excess[a.tail] += f[e];
    excess[a.head] -= f[e];
  }
  for (std::size_t v = 0; v < net.node_count; ++v) {
    if (excess[v] != net.balance[v]) return false;
  }
  return true;
}

LowerBoundFree eliminate_lower_bounds(const Network& net) {
  net.validate();
  LowerBoundFree out{net, 0};
  for (Arc& a : out.network.arcs) {
    if (a.lower == 0) continue;
    out.network.balance[a.tail] -= a.lower;
    out.network.balance[a.head] += a.lower;
    out.offset = checked_add(out.offset, checked_mul(a.lower, a.cost));
    a.upper -= a.lower;
    a.lower = 0;
  }
  return out;
}

Flow lift_flow(const Network& original, const Flow& reduced) {
  Flow f(reduced);
  for (std::size_t e = 0; e < f.size(); ++e) f[e] += original.arcs[e].lower;
  return f;
}

namespace {

// Residual graph with paired forward/backward entries (index ^ 1).
class Residual {
 public:
  struct Entry {
    std::size_t to;
    FlowUnits cap;
    Cost cost;
  };

  explicit Residual(std::size_t nodes) : out_(nodes) {}

  std::size_t add(std::size_t from, std::size_t to, FlowUnits cap, Cost cost) {
    std::size_t id = entries_.size();
    entries_.push_back({to, cap, cost});
    entries_.push_back({from, 0, -cost});
    out_[from].push_back(id);
    out_[to].push_back(id + 1);
    return id;
  }

  FlowUnits pushed(std::size_t id) const { return entries_[id ^ 1].cap; }

  // Sends up to `demand` units from source to sink along successive
  // cheapest paths. Returns the amount sent.
  FlowUnits augment(std::size_t source, std::size_t sink, FlowUnits demand) {
    constexpr Cost kInf = std::numeric_limits<Cost>::max();
    const std::size_t n = out_.size();
    std::vector<Cost> potential(n, 0);
    std::vector<Cost> dist(n);
    std::vector<std::size_t> via(n);
    FlowUnits sent = 0;
    using Item = std::pair<Cost, std::size_t>;
    while (sent < demand) {
      std::fill(dist.begin(), dist.end(), kInf);
      dist[source] = 0;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      heap.push({0, source});
      while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d != dist[v]) continue;
        for (std::size_t id : out_[v]) {
          const Entry& e = entries_[id];
          if (e.cap == 0) continue;
          Cost nd = d + e.cost + potential[v] - potential[e.to];
          if (nd < dist[e.to]) {
            dist[e.to] = nd;
            via[e.to] = id;
            heap.push({nd, e.to});
          }
        }
      }
      if (dist[sink] == kInf) break;
      for (std::size_t v = 0; v < n; ++v) {
        potential[v] += std::min(dist[v], dist[sink]);
      }
      FlowUnits bottleneck = demand - sent;
      for (std::size_t v = sink; v != source; v = entries_[via[v] ^ 1].to) {
        bottleneck = std::min(bottleneck, entries_[via[v]].cap);
      }
      for (std::size_t v = sink; v != source; v = entries_[via[v] ^ 1].to) {
        entries_[via[v]].cap -= bottleneck;
        entries_[via[v] ^ 1].cap += bottleneck;
      }
      sent += bottleneck;
    }
    return sent;
  }

 private:
  std::vector<std::vector<std::size_t>> out_;
  std::vector<Entry> entries_;
};

}  // namespace

Flow min_cost_flow(const Network& net) {
  net.validate();
  for (const Arc& a : net.arcs) {
    if (a.cost < 0) throw std::invalid_argument("negative arc costs are not supported");
  }
  const LowerBoundFree reduced = eliminate_lower_bounds(net);
  const Network& free_net = reduced.network;

  const std::size_t source = free_net.node_count;
  const std::size_t sink = free_net.node_count + 1;
  Residual residual(free_net.node_count + 2);
  std::vector<std::size_t> arc_ids;
  arc_ids.reserve(free_net.arcs.size());
  for (const Arc& a : free_net.arcs) {
    arc_ids.push_back(residual.add(a.tail, a.head, a.upper, a.cost));
  }
  FlowUnits demand = 0;
  for (std::size_t v = 0; v < free_net.node_count; ++v) {
    FlowUnits b = free_net.balance[v];
    if (b > 0) {
      residual.add(source, v, b, 0);
      demand = checked_add(demand, b);
    } else if (b < 0) {
      residual.add(v, sink, -b, 0);
    }
  }
  if (residual.augment(source, sink, demand) != demand) {
    throw Infeasible("no feasible flow satisfies the balances");
  }
  Flow reduced_flow(free_net.arcs.size());
  for (std::size_t e = 0; e < arc_ids.size(); ++e) {
    reduced_flow[e] = residual.pushed(arc_ids[e]);
  }
  return lift_flow(net, reduced_flow);
}

Cost flow_cost(const Network& net, const Flow& f) {
  if (!is_feasible(net, f)) throw InfeasibleFlow("flow violates bounds or balances");
  Cost total = 0;
  for (std::size_t e = 0; e < f.size(); ++e) {
    total = checked_add(total, checked_mul(net.arcs[e].cost, f[e]));
  }
  return total;
}

std::string dump_flow(const Network& net, const Flow& f) {
  std::ostringstream out;
  for (std::size_t e = 0; e < net.arcs.size(); ++e) {
    const Arc& a = net.arcs[e];
    out << "edge " << a.tail << ' ' << a.head << ' ' << a.lower << ' '
        << a.upper << ' ' << a.cost << ' ' << (e < f.size() ? f[e] : 0) << '\n';
  }
  return out.str();
}

}  // namespace pkeys
