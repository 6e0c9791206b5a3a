// Copyright 2026 The linoq Authors
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

#pragma once

#include <stdexcept>

namespace linoq {

// Requested dimension cannot represent the object (e.g. Fock cutoff < 2).
class InvalidDimensionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Operands live in different truncated spaces (cutoff / mode-count mismatch).
class IncompatibilityError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The Fock cutoff is too small for the requested amplitude or operation;
// the caller must raise it.
class TruncationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conditioning on a measurement outcome whose probability vanishes; no
// conditional state is defined.
class ZeroProbabilityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computed value violates an exact mathematical property beyond tolerance.
class NumericalInconsistencyError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The ideal target qubit is undefined at the requested parameters.
class UndefinedTargetError : public std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace linoq
