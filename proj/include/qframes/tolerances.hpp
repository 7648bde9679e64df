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

#ifndef QFRAMES_TOLERANCES_HPP
#define QFRAMES_TOLERANCES_HPP

namespace qframes::tol {

// Precondition checks on operator structure.
inline constexpr double kHermiticity = 1e-10;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kStateNorm = 1e-10;
inline constexpr double kProbabilityNormalization = 1e-10;
inline constexpr double kOrthonormality = 1e-9;

// Eigensolver.
inline constexpr double kDegeneracy = 1e-9;
inline constexpr double kPhaseReference = 1e-8;

// Ensembles and distributions.
inline constexpr double kZeroProbability = 1e-12;
inline constexpr double kNegativeClamp = 1e-12;
inline constexpr double kPsdFloor = 1e-10;

// Pointer readout: overlap modulus must exceed 1 - kReadout.
inline constexpr double kReadout = 1e-8;

// Dual-path agreement inside scenario runs.
inline constexpr double kDualPath = 1e-10;

// CHSH: |S| > 2 + kChshSlack counts as a violation.
inline constexpr double kChshSlack = 1e-9;

// Config amplitudes: reject beyond kAmplitudeReject, renormalize with a
// warning beyond kAmplitudeWarn.
inline constexpr double kAmplitudeReject = 1e-8;
inline constexpr double kAmplitudeWarn = 1e-10;

}  // namespace qframes::tol

#endif  // QFRAMES_TOLERANCES_HPP
