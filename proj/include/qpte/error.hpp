// Copyright 2026 The QPTE Authors
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

namespace qpte {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested qubit count exceeds the configured ceiling, or allocation failed.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument: bad qubit position, non-unitary matrix, bad size.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Mismatched lengths or dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A value cannot be encoded because its magnitude exceeds 1.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// The statevector is not in a usable state (not normalized, zero
/// post-selection probability).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Input samples violate the requested normalization domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Unsupported or malformed file format.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpte
