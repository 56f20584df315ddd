// Copyright 2026 The MONFG Opponent Modelling Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MONFG_ERRORS_H_
#define MONFG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace monfg {

// Bad shapes, out-of-range indices, unknown identifiers.
using InvalidArgument = std::invalid_argument;

// Non-finite parameters, failed factorizations.
using NumericDomainError = std::domain_error;

// The opponent model was asked for a policy before any action was observed.
class EmptyWindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A matchup or config file that cannot be run as given.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace monfg

#endif  // MONFG_ERRORS_H_
