// Copyright 2026 The qbattery Authors
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

// Every numeric tolerance used by the library and its tests.
namespace qb::tol {

inline constexpr double structural = 1e-10;  // eigen residuals, PSD slack, closed-form agreement
inline constexpr double algebraic = 1e-12;   // hermiticity, unit trace, unitarity
inline constexpr double imaginary_residue = 1e-10;  // allowed Im part of a physical trace
inline constexpr double integrator = 1e-8;   // trace/hermiticity drift of RK4 trajectories
inline constexpr double psd_slack = 1e-10;
inline constexpr double degeneracy = 1e-9;   // relative gap below which eigenvalues are clustered

// Largest RK4 step is max_step_scale / max(rates..., 1).
inline constexpr double max_step_scale = 0.01;

}  // namespace qb::tol
