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

#ifndef PKEYS_CHECKED_H_
#define PKEYS_CHECKED_H_

#include <concepts>
#include <stdexcept>

namespace pkeys {

// Overflow-checked integer arithmetic for secret counts and flow costs.
template <std::integral T>
T checked_add(T a, T b) {
  T out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in addition");
  }
  return out;
}

template <std::integral T>
T checked_mul(T a, T b) {
  T out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow in multiplication");
  }
  return out;
}

}  // namespace pkeys

#endif  // PKEYS_CHECKED_H_
