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

#ifndef PKEYS_PRF_H_
#define PKEYS_PRF_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace pkeys {

// Keys, secrets and PRF outputs share one 32-byte space so that an output
// can re-key the function.
using Secret = std::array<std::uint8_t, 32>;

// A keyed pseudorandom function F: K x {0,1}* -> K.
class Prf {
 public:
  virtual ~Prf() = default;
  virtual Secret eval(const Secret& key,
                      std::span<const std::uint8_t> input) const = 0;
  // Identifier written into key material headers.
  virtual std::string_view name() const = 0;
};

// HMAC-SHA-256 with a 32-byte key.
class HmacSha256Prf final : public Prf {
 public:
  Secret eval(const Secret& key,
              std::span<const std::uint8_t> input) const override;
  std::string_view name() const override { return "hmac-sha256"; }
};

const Prf& default_prf();

std::string to_hex(std::span<const std::uint8_t> bytes);
// Throws std::invalid_argument on odd length or non-hex characters, and if
// the decoded length is not 32.
Secret secret_from_hex(std::string_view hex);

// 32 bytes from the operating system's CSPRNG.
Secret random_secret();

}  // namespace pkeys

#endif  // PKEYS_PRF_H_
