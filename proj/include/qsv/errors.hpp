// Copyright 2026 The QSV Toolkit Authors
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

namespace qsv {

/// Base class for all toolkit-specific failures.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A request that is well-formed but has no feasible answer: no local
/// homogeneous protocol, a completeness bound violated, a table that
/// cannot be revised, and so on. Distinct from invalid input, which is
/// reported with std::invalid_argument.
class InfeasibleError : public Error {
public:
  explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/// Completeness constraint violated; carries the offending value so that
/// callers can report it or retry against a looser bound.
class CompletenessError : public InfeasibleError {
public:
  CompletenessError(const std::string& what, double completeness, double bound)
      : InfeasibleError(what), completeness(completeness), bound(bound) {}

  double completeness;
  double bound;
};

}  // namespace qsv
