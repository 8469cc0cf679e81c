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

#include "pkeys/policy.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pkeys/checked.h"
#include "pkeys/errors.h"
#include "pkeys/matching.h"
#include "text_util.h"

namespace pkeys {

namespace {

std::string label_str(std::size_t x) { return std::to_string(x); }

// Kahn's algorithm over the parent -> child adjacency; parents come first.
std::vector<Label> topological_order(
    const std::vector<std::vector<Label>>& out_edges) {
  const std::size_t n = out_edges.size();
  std::vector<std::size_t> in_degree(n, 0);
  for (const auto& outs : out_edges) {
    for (Label c : outs) ++in_degree[c];
  }
  std::priority_queue<Label, std::vector<Label>, std::greater<>> ready;
  for (Label x = 0; x < n; ++x) {
    if (in_degree[x] == 0) ready.push(x);
  }
  std::vector<Label> order;
  order.reserve(n);
  while (!ready.empty()) {
    Label x = ready.top();
    ready.pop();
    order.push_back(x);
    for (Label c : out_edges[x]) {
      if (--in_degree[c] == 0) ready.push(c);
    }
  }
  if (order.size() != n) {
    throw CycleDetected("edges contain a directed cycle");
  }
  return order;
}

LabelSet bits_to_labels(const Bits& bits) {
  LabelSet out;
  out.reserve(bits.count());
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) {
    out.push_back(static_cast<Label>(i));
  }
  return out;
}

}  // namespace

Policy Policy::from_edges(std::size_t n, const std::vector<Edge>& edges,
                          const std::map<Label, UserCount>& users,
                          const std::map<Label, std::string>& aliases) {
  if (n == 0) throw std::invalid_argument("a policy needs at least one label");
  if (n > std::numeric_limits<Label>::max()) {
    throw IndexOutOfRange("too many labels");
  }

  std::vector<std::vector<Label>> out_edges(n);
  for (const Edge& e : edges) {
    if (e.parent >= n || e.child >= n) {
      throw IndexOutOfRange("edge (" + label_str(e.parent) + "," +
                            label_str(e.child) + ") out of range for n=" +
                            label_str(n));
    }
    if (e.parent == e.child) {
      throw CycleDetected("self loop on label " + label_str(e.parent));
    }
    out_edges[e.parent].push_back(e.child);
  }
  for (auto& outs : out_edges) {
    std::sort(outs.begin(), outs.end());
    outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
  }
  const std::vector<Label> order = topological_order(out_edges);
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

  Policy p;
  p.below_.assign(n, Bits(n));
  // Children are closed before their parents.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Bits& row = p.below_[*it];
    for (Label c : out_edges[*it]) {
      row.set(c);
      row |= p.below_[c];
    }
  }

  p.above_.assign(n, Bits(n));
  for (Label x = 0; x < n; ++x) {
    const Bits& row = p.below_[x];
    for (auto y = row.find_first(); y != Bits::npos; y = row.find_next(y)) {
      p.above_[y].set(x);
    }
  }

  // Transitive reduction: scan the labels below x nearest-first (by
  // topological position); a label not already below a chosen cover is a
  // cover itself.
  p.parents_.assign(n, {});
  p.children_.assign(n, {});
  std::vector<Label> candidates;
  for (Label x = 0; x < n; ++x) {
    candidates = bits_to_labels(p.below_[x]);
    std::sort(candidates.begin(), candidates.end(),
              [&](Label a, Label b) { return position[a] < position[b]; });
    Bits covered(n);
    for (Label c : candidates) {
      if (covered.test(c)) continue;
      p.children_[x].push_back(c);
      covered |= p.below_[c];
    }
    std::sort(p.children_[x].begin(), p.children_[x].end());
    for (Label c : p.children_[x]) p.parents_[c].push_back(x);
  }
  // Parents were appended in ascending x, so they are already sorted.

  p.users_.assign(n, 1);
  for (const auto& [label, count] : users) {
    if (label >= n) {
      throw IndexOutOfRange("user count for label " + label_str(label) +
                            " out of range");
    }
    p.users_[label] = count;
  }
  p.up_weight_.assign(n, 0);
  for (Label x = 0; x < n; ++x) {
    UserCount w = p.users_[x];
    const Bits& row = p.above_[x];
    for (auto y = row.find_first(); y != Bits::npos; y = row.find_next(y)) {
      w = checked_add(w, p.users_[y]);
    }
    p.up_weight_[x] = w;
  }

  p.aliases_.assign(n, std::nullopt);
  std::set<std::string> seen;
  for (const auto& [label, name] : aliases) {
    if (label >= n) {
      throw IndexOutOfRange("alias for label " + label_str(label) +
                            " out of range");
    }
    if (!seen.insert(name).second) {
      throw std::invalid_argument("duplicate alias '" + name + "'");
    }
    p.aliases_[label] = name;
  }
  return p;
}

bool Policy::covers(Label parent, Label child) const {
  const LabelSet& cs = children_[parent];
  return std::binary_search(cs.begin(), cs.end(), child);
}

std::vector<Edge> Policy::hasse_edges() const {
  std::vector<Edge> out;
  for (Label x = 0; x < size(); ++x) {
    for (Label c : children_[x]) out.push_back({x, c});
  }
  return out;
}

std::size_t Policy::hasse_edge_count() const {
  std::size_t m = 0;
  for (const auto& cs : children_) m += cs.size();
  return m;
}

std::size_t Policy::closure_pair_count() const {
  std::size_t m = 0;
  for (const auto& row : below_) m += row.count();
  return m;
}

std::optional<Label> Policy::find_alias(std::string_view alias) const {
  for (Label x = 0; x < size(); ++x) {
    if (aliases_[x] && *aliases_[x] == alias) return x;
  }
  return std::nullopt;
}

std::vector<Label> linear_extension(const Policy& p) {
  std::vector<std::vector<Label>> out_edges(p.size());
  for (Label x = 0; x < p.size(); ++x) {
    out_edges[x] = p.children(x);
  }
  return topological_order(out_edges);
}

std::size_t width(const Policy& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (Label x = 0; x < n; ++x) {
    const Bits& row = p.strictly_below(x);
    for (auto y = row.find_first(); y != Bits::npos; y = row.find_next(y)) {
      adjacency[x].push_back(y);
    }
  }
  BipartiteMatching matching(std::move(adjacency), n);
  return n - matching.size();
}

LabelSet up_set(const Policy& p, Label x) {
  LabelSet out = bits_to_labels(p.strictly_above(x));
  out.insert(std::upper_bound(out.begin(), out.end(), x), x);
  return out;
}

LabelSet down_set(const Policy& p, Label x) {
  LabelSet out = bits_to_labels(p.strictly_below(x));
  out.insert(std::upper_bound(out.begin(), out.end(), x), x);
  return out;
}

Label interval_label(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || i > j || j > n) {
    throw IndexOutOfRange("no interval [" + std::to_string(i) + "," +
                          std::to_string(j) + "] in I(" + std::to_string(n) +
                          ")");
  }
  // Intervals starting before i: sum_{k<i} (n - k + 1).
  std::size_t before = (i - 1) * n - (i - 1) * (i - 2) / 2;
  return static_cast<Label>(before + (j - i));
}

Policy interval_poset(std::size_t n) {
  if (n == 0) throw std::invalid_argument("I(n) needs n >= 1");
  const std::size_t labels = n * (n + 1) / 2;
  std::vector<Edge> edges;
  std::map<Label, std::string> aliases;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      Label x = interval_label(n, i, j);
      aliases[x] = "[" + std::to_string(i) + "," + std::to_string(j) + "]";
      if (i < j) {
        edges.push_back({x, interval_label(n, i + 1, j)});
        edges.push_back({x, interval_label(n, i, j - 1)});
      }
    }
  }
  return Policy::from_edges(labels, edges, {}, aliases);
}

namespace {

template <typename T>
std::optional<T> parse_uint(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

Policy parse_policy(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::map<Label, UserCount> users;
  std::map<Label, std::string> aliases;
  std::set<std::string> alias_names;

  std::size_t last_line = 0;
  for_each_directive(text, [&](std::size_t line_no, const Tokens& tok) {
    last_line = line_no;
    auto label_at = [&](std::size_t k) -> Label {
      auto v = parse_uint<std::size_t>(tok[k]);
      if (!v) throw SyntaxError(line_no, "bad label id '" + std::string(tok[k]) + "'");
      if (*v >= *n) {
        throw SyntaxError(line_no, "label id " + std::to_string(*v) +
                                       " out of range for n=" + std::to_string(*n));
      }
      return static_cast<Label>(*v);
    };

    if (tok[0] == "p") {
      if (n) throw SyntaxError(line_no, "duplicate 'p' line");
      if (tok.size() != 2) throw SyntaxError(line_no, "expected 'p <n>'");
      auto v = parse_uint<std::size_t>(tok[1]);
      if (!v || *v == 0) throw SyntaxError(line_no, "label count must be a positive integer");
      n = *v;
    } else if (!n) {
      throw SyntaxError(line_no, "first directive must be 'p <n>'");
    } else if (tok[0] == "n") {
      if (tok.size() < 2 || tok.size() > 4) {
        throw SyntaxError(line_no, "expected 'n <id> <users> [alias]'");
      }
      Label x = label_at(1);
      if (users.count(x) || aliases.count(x)) {
        throw SyntaxError(line_no, "label " + std::to_string(x) + " declared twice");
      }
      UserCount count = 1;
      if (tok.size() >= 3) {
        auto v = parse_uint<UserCount>(tok[2]);
        if (!v) throw SyntaxError(line_no, "bad user count '" + std::string(tok[2]) + "'");
        count = *v;
      }
      users[x] = count;
      if (tok.size() == 4) {
        std::string name(tok[3]);
        if (parse_uint<std::size_t>(name)) {
          throw SyntaxError(line_no, "alias '" + name + "' must not be a number");
        }
        if (!alias_names.insert(name).second) {
          throw SyntaxError(line_no, "duplicate alias '" + name + "'");
        }
        aliases[x] = std::move(name);
      }
    } else if (tok[0] == "e") {
      if (tok.size() != 3) throw SyntaxError(line_no, "expected 'e <parent> <child>'");
      edges.push_back({label_at(1), label_at(2)});
    } else {
      throw SyntaxError(line_no, "unknown directive '" + std::string(tok[0]) + "'");
    }
  });
  if (!n) throw SyntaxError(last_line, "missing 'p <n>' line");
  return Policy::from_edges(*n, edges, users, aliases);
}

std::string serialize_policy(const Policy& p) {
  std::ostringstream out;
  out << "p " << p.size() << '\n';
  for (Label x = 0; x < p.size(); ++x) {
    out << "n " << x << ' ' << p.users(x);
    if (p.alias(x)) out << ' ' << *p.alias(x);
    out << '\n';
  }
  for (const Edge& e : p.hasse_edges()) {
    out << "e " << e.parent << ' ' << e.child << '\n';
  }
  return out.str();
}

Label resolve_label(const Policy& p, std::string_view token) {
  if (auto x = p.find_alias(token)) return *x;
  auto v = parse_uint<std::size_t>(token);
  if (!v || *v >= p.size()) {
    throw IndexOutOfRange("unknown label '" + std::string(token) + "'");
  }
  return static_cast<Label>(*v);
}

}  // namespace pkeys
