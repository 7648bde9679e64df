// Copyright 2026 The qframes Authors
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

#ifndef QFRAMES_ERRORS_HPP
#define QFRAMES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qframes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatch between a matrix/vector and a layout, or a malformed layout.
class LayoutError : public Error {
 public:
  using Error::Error;
};

/// A subsystem label that is not part of the layout.
class UnknownSubsystemError : public Error {
 public:
  using Error::Error;
};

/// A structural precondition failed (non-Hermitian, non-unitary, non-unit norm, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The described system is not contained in its reference system.
class ContainmentError : public Error {
 public:
  using Error::Error;
};

/// Joint probabilities requested for overlapping systems.
class DisjointnessError : public Error {
 public:
  using Error::Error;
};

/// Amplitudes or probabilities that do not sum to one.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Measured basis does not span the probe space.
class CompletenessError : public Error {
 public:
  using Error::Error;
};

}  // namespace qframes

#endif  // QFRAMES_ERRORS_HPP
