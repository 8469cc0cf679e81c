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

#ifndef PKEYS_NETFLOW_H_
#define PKEYS_NETFLOW_H_

#include <cstdint>
#include <string>
#include <vector>

namespace pkeys {

using FlowUnits = std::int64_t;
using Cost = std::int64_t;

struct Arc {
  std::size_t tail;
  std::size_t head;
  FlowUnits lower = 0;
  FlowUnits upper = 0;
  Cost cost = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// A network N = (D, l, u, c, beta). balance[v] > 0 means v emits that much
// flow, balance[v] < 0 means v absorbs it.
struct Network {
  std::size_t node_count = 0;
  std::vector<Arc> arcs;
  std::vector<FlowUnits> balance;

  std::size_t add_arc(std::size_t tail, std::size_t head, FlowUnits lower,
                      FlowUnits upper, Cost cost);

  // Throws std::invalid_argument unless 0 <= l <= u on every arc, endpoints
  // are in range, balances cover every node and sum to zero.
  void validate() const;

  friend bool operator==(const Network&, const Network&) = default;
};

// Flow value per arc, indexed like Network::arcs.
using Flow = std::vector<FlowUnits>;

// l <= f <= u on every arc and outflow - inflow = balance at every node.
bool is_feasible(const Network& net, const Flow& f);

struct LowerBoundFree {
  Network network;
  Cost offset = 0;  // sum over arcs of l * c
};

// Shifts every lower bound into the balances: l' = 0, u' = u - l,
// balance(tail) -= l, balance(head) += l. A feasible flow f' of the result
// lifts to f = f' + l with cost(f) = cost(f') + offset.
LowerBoundFree eliminate_lower_bounds(const Network& net);

// Lifts a flow of the lower-bound-free network back to `original`.
Flow lift_flow(const Network& original, const Flow& reduced);

// Integral minimum-cost feasible flow by successive shortest augmenting
// paths with node potentials, run on the lower-bound-free network.
// Costs must be non-negative. Throws Infeasible if no feasible flow exists.
Flow min_cost_flow(const Network& net);

// Sum of c(e) * f(e). Throws InfeasibleFlow if f is not feasible.
Cost flow_cost(const Network& net, const Flow& f);

// One `edge <tail> <head> l u c f` line per arc.
std::string dump_flow(const Network& net, const Flow& f);

}  // namespace pkeys

#endif  // PKEYS_NETFLOW_H_
