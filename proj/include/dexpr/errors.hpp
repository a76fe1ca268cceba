// Copyright 2026 The dexpr Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace dexpr {

/** Malformed circuit document, theta file or command-line value. */
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** An analysis was asked for something its inputs do not support. */
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Mismatched qubit counts, slot indices or vector lengths. */
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dexpr
