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

#ifndef PKEYS_ERRORS_H_
#define PKEYS_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pkeys {

// Base of every domain error raised by the library. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CycleDetected : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class NotComparable : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class InfeasibleFlow : public Error {
 public:
  using Error::Error;
};

class InvalidPartition : public Error {
 public:
  using Error::Error;
};

class MalformedFlow : public Error {
 public:
  using Error::Error;
};

class InconsistentAnchors : public Error {
 public:
  using Error::Error;
};

class MalformedSigma : public Error {
 public:
  using Error::Error;
};

// Raised by the brute-force oracles when an instance exceeds the configured
// enumeration cap. Enumerations never truncate silently.
class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace pkeys

#endif  // PKEYS_ERRORS_H_
