// Copyright 2026 The collisim Authors
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

namespace collisim {

// Bad dimensions, out-of-range parameters, malformed configs.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its documented domain
// (e.g. a non-Hermitian matrix handed to the Hermitian eigensolver).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A state stopped being a state: eigenvalues below the rounding floor,
// trace drift, NaNs. Always fatal for the run that produced it.
class NumericalIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotConvergedError : public std::runtime_error {
 public:
  NotConvergedError(const std::string& what, double last_drift)
      : std::runtime_error(what), last_drift_(last_drift) {}
  double last_drift() const noexcept { return last_drift_; }

 private:
  double last_drift_;
};

}  // namespace collisim
