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

#ifndef PKEYS_CES_H_
#define PKEYS_CES_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pkeys/forest.h"
#include "pkeys/policy.h"
#include "pkeys/prf.h"

namespace pkeys {

// The PRF input naming a label: ASCII "node:" followed by the 8-byte
// big-endian label index.
using LabelName = std::array<std::uint8_t, 13>;
LabelName label_name(Label x);
std::optional<Label> parse_label_name(std::span<const std::uint8_t> name);

using SigmaEntry = std::pair<Label, Secret>;
using Sigma = std::vector<SigmaEntry>;  // sorted by label

// Output of SetUp. `secrets` holds s(x) for every label and is internal to
// the data owner; a state read back from a key material file has it empty.
// Users at x receive sigma[x]; kappa[x] is the key protecting objects at x.
// There is no public information.
struct SchemeState {
  std::vector<Secret> secrets;
  std::vector<Sigma> sigma;
  std::vector<Secret> kappa;

  friend bool operator==(const SchemeState&, const SchemeState&) = default;
};

// Secret assigned to a forest root.
using RootSecretFn = std::function<Secret(Label)>;

// HMAC(seed, "root:" || 8-byte big-endian index), the default root secret.
RootSecretFn seeded_roots(const Secret& seed, const Prf& prf = default_prf());

// Walks the labels maximal-first. Roots take root_secret(x); every other
// label takes s(x) = F(s(par(x)), name(x)). Then sigma(x) = {(v, s(v)) : v
// in a[x]} and kappa(x) = F(s(x), name(x)).
// Throws InconsistentAnchors if a is not a valid anchor assignment for the
// forest: some anchor of x is not below x, or some label below x cannot be
// reached from any anchor of x.
SchemeState setup(const Policy& p, const Forest& f, const AnchorMap& a,
                  const RootSecretFn& root_secret,
                  const Prf& prf = default_prf());
SchemeState setup(const Policy& p, const Forest& f, const AnchorMap& a,
                  const Secret& seed, const Prf& prf = default_prf());

// kappa(y) from sigma(x), or nullopt (the failure symbol) when y is not
// below x. Throws MalformedSigma if sigma_x lacks the anchor that covers y.
std::optional<Secret> derive(const Policy& p, const Forest& f,
                             const AnchorMap& a, Label x, Label y,
                             const Sigma& sigma_x,
                             const Prf& prf = default_prf());

struct VerifyFailure {
  std::string check;  // "correctness", "security" or "key-collision"
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyFailure> failures;
  std::size_t pairs_checked = 0;
  bool ok() const { return failures.empty(); }
};

// Checks that every authorized derivation reproduces kappa, that no sigma
// entry sits forest-above a label its owner may not read, and that no two
// labels share a key.
VerifyReport verify_scheme(const Policy& p, const Forest& f,
                           const AnchorMap& a, const SchemeState& state,
                           const Prf& prf = default_prf());

// Key material file:
//   ces v1 hmac-sha256
//   sigma <owner>:
//   s <anchor> <64-hex>      (one per anchor of owner)
//   ...
//   k <label> <64-hex>
std::string serialize_key_material(const SchemeState& state,
                                   std::string_view prf_name = "hmac-sha256");
SchemeState parse_key_material(std::string_view text, std::size_t label_count);

}  // namespace pkeys

#endif  // PKEYS_CES_H_
