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

#ifndef PKEYS_POLICY_H_
#define PKEYS_POLICY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace pkeys {

// Security labels are dense indices 0..n-1.
using Label = std::uint32_t;
using UserCount = std::uint64_t;
using LabelSet = std::vector<Label>;  // always sorted ascending
using Bits = boost::dynamic_bitset<std::uint64_t>;

// A directed edge (parent, child) meaning child < parent.
struct Edge {
  Label parent;
  Label child;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// An information flow policy: a finite poset of security labels together
// with the number of users assigned to each label.
//
// The strict order is stored twice as bit matrices (strictly-below and
// strictly-above rows) so comparability tests are O(1). The Hasse diagram
// is always the transitive reduction, whatever edge set the policy was
// built from. Immutable after construction.
class Policy {
 public:
  // Builds a policy from any acyclic edge set whose transitive closure is
  // the intended order. `users` defaults to one user per label; labels
  // absent from the map get one user.
  static Policy from_edges(std::size_t n, const std::vector<Edge>& edges,
                           const std::map<Label, UserCount>& users = {},
                           const std::map<Label, std::string>& aliases = {});

  std::size_t size() const { return below_.size(); }

  // y < x.
  bool less(Label y, Label x) const { return below_[x].test(y); }
  // y <= x.
  bool less_equal(Label y, Label x) const { return y == x || less(y, x); }
  bool comparable(Label a, Label b) const {
    return a == b || less(a, b) || less(b, a);
  }

  // Rows of the closure: labels strictly below / strictly above x.
  const Bits& strictly_below(Label x) const { return below_[x]; }
  const Bits& strictly_above(Label x) const { return above_[x]; }

  // Covering relation. Both lists are sorted ascending.
  const LabelSet& parents(Label x) const { return parents_[x]; }
  const LabelSet& children(Label x) const { return children_[x]; }
  bool covers(Label parent, Label child) const;
  bool is_maximal(Label x) const { return parents_[x].empty(); }

  // Hasse edges sorted by (parent, child).
  std::vector<Edge> hasse_edges() const;
  std::size_t hasse_edge_count() const;
  // Number of strictly comparable pairs, |E_max|.
  std::size_t closure_pair_count() const;

  UserCount users(Label x) const { return users_[x]; }
  const std::vector<UserCount>& user_counts() const { return users_; }
  // Sum of |U_v| over v >= x.
  UserCount up_weight(Label x) const { return up_weight_[x]; }

  const std::optional<std::string>& alias(Label x) const { return aliases_[x]; }
  std::optional<Label> find_alias(std::string_view alias) const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  Policy() = default;

  std::vector<Bits> below_;
  std::vector<Bits> above_;
  std::vector<LabelSet> parents_;
  std::vector<LabelSet> children_;
  std::vector<UserCount> users_;
  std::vector<UserCount> up_weight_;
  std::vector<std::optional<std::string>> aliases_;
};

// Labels ordered so that every label precedes all labels below it, i.e.
// x_1 (maximal) first and x_n (minimal) last. Ties are broken by ascending
// label index.
std::vector<Label> linear_extension(const Policy& p);

// Size of a maximum antichain, computed as n minus a maximum matching in the
// bipartite comparability graph (minimum chain cover, Dilworth).
std::size_t width(const Policy& p);

// Up-set {y : y >= x} and down-set {y : y <= x}; both contain x.
LabelSet up_set(const Policy& p, Label x);
LabelSet down_set(const Policy& p, Label x);

// The interval poset I(n): labels are the intervals [i,j], 1 <= i <= j <= n,
// ordered by containment. Labels are numbered lexicographically by (i, j)
// and carry the alias "[i,j]"; every label has one user.
Policy interval_poset(std::size_t n);

// Index of the interval [i,j] (1-based endpoints) in interval_poset(n).
Label interval_label(std::size_t n, std::size_t i, std::size_t j);

// Line-oriented policy file format:
//   p <n>
//   n <id> <users> [alias]
//   e <parent-id> <child-id>
// '#' starts a comment. Throws SyntaxError, CycleDetected, IndexOutOfRange.
Policy parse_policy(std::string_view text);
std::string serialize_policy(const Policy& p);

// Resolves a label written either as a decimal index or as an alias.
Label resolve_label(const Policy& p, std::string_view token);

}  // namespace pkeys

#endif  // PKEYS_POLICY_H_
