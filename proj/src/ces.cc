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

#include "pkeys/ces.h"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pkeys/errors.h"
#include "text_util.h"

namespace pkeys {

namespace {

void put_be64(std::uint8_t* out, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
}

constexpr std::string_view kLabelPrefix = "node:";
constexpr std::string_view kRootPrefix = "root:";

const Secret* find_secret(const Sigma& sigma, Label z) {
  auto it = std::lower_bound(
      sigma.begin(), sigma.end(), z,
      [](const SigmaEntry& e, Label v) { return e.first < v; });
  return it != sigma.end() && it->first == z ? &it->second : nullptr;
}

// Throws InconsistentAnchors unless every anchor of x lies below x and
// every label below x is forest-below one of x's anchors.
void check_anchor_map(const Policy& p, const Forest& f, const AnchorMap& a,
                      const std::vector<Label>& order) {
  const std::size_t n = p.size();
  if (a.size() != n) throw InconsistentAnchors("anchor map size does not match the policy");
  std::vector<char> is_anchor(n);
  std::vector<char> reached(n);
  for (Label x = 0; x < n; ++x) {
    std::fill(is_anchor.begin(), is_anchor.end(), 0);
    for (Label z : a[x]) {
      if (z >= n || !p.less_equal(z, x)) {
        throw InconsistentAnchors("anchor " + std::to_string(z) + " of " +
                                  std::to_string(x) + " is not below it");
      }
      is_anchor[z] = 1;
    }
    // Parents precede children in `order`.
    for (Label v : order) {
      auto par = f.parent(v);
      reached[v] = is_anchor[v] || (par && reached[*par]);
    }
    for (Label u = 0; u < n; ++u) {
      if (p.less_equal(u, x) && !reached[u]) {
        throw InconsistentAnchors("label " + std::to_string(u) +
                                  " is not derivable from the anchors of " +
                                  std::to_string(x));
      }
    }
  }
}

}  // namespace

LabelName label_name(Label x) {
  LabelName out{};
  std::copy(kLabelPrefix.begin(), kLabelPrefix.end(), out.begin());
  put_be64(out.data() + kLabelPrefix.size(), x);
  return out;
}

std::optional<Label> parse_label_name(std::span<const std::uint8_t> name) {
  if (name.size() != LabelName{}.size() ||
      !std::equal(kLabelPrefix.begin(), kLabelPrefix.end(), name.begin())) {
    return std::nullopt;
  }
  std::uint64_t v = 0;
  for (std::size_t i = kLabelPrefix.size(); i < name.size(); ++i) v = v << 8 | name[i];
  if (v > std::numeric_limits<Label>::max()) return std::nullopt;
  return static_cast<Label>(v);
}

RootSecretFn seeded_roots(const Secret& seed, const Prf& prf) {
  return [seed, &prf](Label x) {
    std::array<std::uint8_t, 13> input{};
    std::copy(kRootPrefix.begin(), kRootPrefix.end(), input.begin());
    put_be64(input.data() + kRootPrefix.size(), x);
    return prf.eval(seed, input);
  };
}

SchemeState setup(const Policy& p, const Forest& f, const AnchorMap& a,
                  const RootSecretFn& root_secret, const Prf& prf) {
  f.validate_against(p);
  const std::vector<Label> order = linear_extension(p);
  check_anchor_map(p, f, a, order);

  const std::size_t n = p.size();
  SchemeState state;
  state.secrets.resize(n);
  for (Label x : order) {
    if (auto par = f.parent(x)) {
      state.secrets[x] = prf.eval(state.secrets[*par], label_name(x));
    } else {
      state.secrets[x] = root_secret(x);
    }
  }
  state.sigma.resize(n);
  state.kappa.resize(n);
  for (Label x = 0; x < n; ++x) {
    for (Label v : a[x]) state.sigma[x].emplace_back(v, state.secrets[v]);
    state.kappa[x] = prf.eval(state.secrets[x], label_name(x));
  }
  return state;
}

SchemeState setup(const Policy& p, const Forest& f, const AnchorMap& a,
                  const Secret& seed, const Prf& prf) {
  return setup(p, f, a, seeded_roots(seed, prf), prf);
}

std::optional<Secret> derive(const Policy& p, const Forest& f,
                             const AnchorMap& a, Label x, Label y,
                             const Sigma& sigma_x, const Prf& prf) {
  if (!p.less_equal(y, x)) return std::nullopt;

  // Climb from y to the first anchor of x, remembering the path.
  const LabelSet& anchors_x = a.at(x);
  std::vector<Label> path;
  std::optional<Label> v = y;
  for (; v; v = f.parent(*v)) {
    path.push_back(*v);
    if (std::binary_search(anchors_x.begin(), anchors_x.end(), *v)) break;
  }
  if (!v) {
    throw MalformedSigma("no anchor of " + std::to_string(x) + " covers " +
                         std::to_string(y));
  }
  const Secret* start = find_secret(sigma_x, *v);
  if (start == nullptr) {
    throw MalformedSigma("sigma(" + std::to_string(x) + ") lacks anchor " +
                         std::to_string(*v));
  }
  Secret s = *start;
  for (auto it = path.rbegin() + 1; it != path.rend(); ++it) {
    s = prf.eval(s, label_name(*it));
  }
  return prf.eval(s, label_name(y));
}

VerifyReport verify_scheme(const Policy& p, const Forest& f,
                           const AnchorMap& a, const SchemeState& state,
                           const Prf& prf) {
  const std::size_t n = p.size();
  VerifyReport report;
  if (state.sigma.size() != n || state.kappa.size() != n || a.size() != n ||
      f.size() != n) {
    report.failures.push_back({"correctness", "scheme size does not match policy"});
    return report;
  }

  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      ++report.pairs_checked;
      std::optional<Secret> key;
      try {
        key = derive(p, f, a, x, y, state.sigma[x], prf);
      } catch (const MalformedSigma& e) {
        report.failures.push_back({"correctness", e.what()});
        continue;
      }
      bool authorized = p.less_equal(y, x);
      if (authorized != key.has_value() || (key && *key != state.kappa[y])) {
        report.failures.push_back(
            {"correctness", "derive(" + std::to_string(x) + "," +
                                std::to_string(y) + ") does not match kappa"});
      }
    }
  }

  // Forest descendants of every label, children folded into parents.
  const std::vector<Label> order = linear_extension(p);
  std::vector<Bits> descendants(n, Bits(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    descendants[*it].set(*it);
    if (auto par = f.parent(*it)) descendants[*par] |= descendants[*it];
  }
  for (Label x = 0; x < n; ++x) {
    Bits readable = p.strictly_below(x);
    readable.set(x);
    for (const auto& [z, secret] : state.sigma[x]) {
      if (z >= n || !descendants[z].is_subset_of(readable)) {
        report.failures.push_back(
            {"security", "sigma(" + std::to_string(x) + ") entry " +
                             std::to_string(z) +
                             " reaches a label its owner may not read"});
      }
    }
  }

  std::vector<std::pair<Secret, Label>> keys;
  for (Label x = 0; x < n; ++x) keys.emplace_back(state.kappa[x], x);
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i].first == keys[i - 1].first) {
      report.failures.push_back(
          {"key-collision", "labels " + std::to_string(keys[i - 1].second) +
                                " and " + std::to_string(keys[i].second) +
                                " share a key"});
    }
  }
  return report;
}

std::string serialize_key_material(const SchemeState& state,
                                   std::string_view prf_name) {
  std::ostringstream out;
  out << "ces v1 " << prf_name << '\n';
  for (std::size_t x = 0; x < state.sigma.size(); ++x) {
    out << "sigma " << x << ":\n";
    for (const auto& [z, secret] : state.sigma[x]) {
      out << "s " << z << ' ' << to_hex(secret) << '\n';
    }
  }
  for (std::size_t x = 0; x < state.kappa.size(); ++x) {
    out << "k " << x << ' ' << to_hex(state.kappa[x]) << '\n';
  }
  return out.str();
}

SchemeState parse_key_material(std::string_view text, std::size_t label_count) {
  SchemeState state;
  state.sigma.resize(label_count);
  state.kappa.resize(label_count);
  std::vector<bool> has_sigma(label_count, false);
  std::vector<bool> has_key(label_count, false);
  bool header = false;
  std::optional<Label> owner;

  for_each_directive(text, [&](std::size_t line, const Tokens& tok) {
    auto label_at = [&](std::string_view token) {
      std::size_t v = 0;
      try {
        std::size_t used = 0;
        v = std::stoul(std::string(token), &used);
        if (used != token.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw SyntaxError(line, "bad label '" + std::string(token) + "'");
      }
      if (v >= label_count) throw SyntaxError(line, "label " + std::to_string(v) + " out of range");
      return static_cast<Label>(v);
    };
    auto secret_at = [&](std::string_view token) {
      try {
        return secret_from_hex(token);
      } catch (const std::invalid_argument& e) {
        throw SyntaxError(line, e.what());
      }
    };

    if (!header) {
      if (tok.size() != 3 || tok[0] != "ces" || tok[1] != "v1") {
        throw SyntaxError(line, "expected header 'ces v1 <prf>'");
      }
      if (tok[2] != "hmac-sha256") {
        throw SyntaxError(line, "unsupported PRF '" + std::string(tok[2]) + "'");
      }
      header = true;
    } else if (tok[0] == "sigma") {
      if (tok.size() != 2 || tok[1].empty() || tok[1].back() != ':') {
        throw SyntaxError(line, "expected 'sigma <owner>:'");
      }
      Label x = label_at(tok[1].substr(0, tok[1].size() - 1));
      if (has_sigma[x]) throw SyntaxError(line, "sigma of " + std::to_string(x) + " given twice");
      has_sigma[x] = true;
      owner = x;
    } else if (tok[0] == "s") {
      if (tok.size() != 3) throw SyntaxError(line, "expected 's <label> <hex>'");
      if (!owner) throw SyntaxError(line, "'s' line outside a sigma block");
      state.sigma[*owner].emplace_back(label_at(tok[1]), secret_at(tok[2]));
    } else if (tok[0] == "k") {
      if (tok.size() != 3) throw SyntaxError(line, "expected 'k <label> <hex>'");
      Label x = label_at(tok[1]);
      if (has_key[x]) throw SyntaxError(line, "key of " + std::to_string(x) + " given twice");
      has_key[x] = true;
      state.kappa[x] = secret_at(tok[2]);
    } else {
      throw SyntaxError(line, "unknown directive '" + std::string(tok[0]) + "'");
    }
  });
  if (!header) throw SyntaxError(0, "empty key material");
  for (std::size_t x = 0; x < label_count; ++x) {
    if (!has_sigma[x]) throw SyntaxError(0, "missing sigma for label " + std::to_string(x));
    if (!has_key[x]) throw SyntaxError(0, "missing key for label " + std::to_string(x));
    std::sort(state.sigma[x].begin(), state.sigma[x].end());
  }
  return state;
}

}  // namespace pkeys
