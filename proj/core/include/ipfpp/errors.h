// Copyright 2026 The ipfpp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IPFPP_ERRORS_H_
#define IPFPP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ipfpp {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two vertices that were expected to be nearest neighbors are not.
class AdjacencyError : public Error {
 public:
  using Error::Error;
};

// A region could not be built (origin missing, vertex cap exceeded, ...).
class RegionError : public Error {
 public:
  using Error::Error;
};

// An argument is outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent parameters passed to a coupled run or an experiment.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A regression could not be computed.
class FitError : public Error {
 public:
  using Error::Error;
};

// A deterministic implication of the coupling failed. The message carries a
// full dump of the offending trial.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ipfpp

#endif  // IPFPP_ERRORS_H_
