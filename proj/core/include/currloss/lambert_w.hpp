// Copyright 2026 The currloss Authors.
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

namespace currloss {

// -1/e, the branch point of the Lambert W function.
inline constexpr double kLambertBranchPoint = -0.36787944117144233;

// Arguments this far below -1/e are treated as rounding noise and clamped.
inline constexpr double kLambertClampTolerance = 1e-12;

// Principal branch W0 of the Lambert W function: the w >= -1 solving
// w * exp(w) == x, for x >= -1/e.
//
// Uses a region-dependent initial guess (branch-point series, asymptotic
// log expansion, or a rational guess) followed by Halley iteration.
// Throws DomainError for NaN or x < -1/e - 1e-12. +inf maps to +inf.
double lambert_w0(double x);

}  // namespace currloss
