// Copyright (c) 2026 The phasemod authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace phasemod {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The period [-pi, pi) is sampled on a half-cell shifted grid
//   s_j = -pi + (j + 1/2) * 2 pi / m,   j = 0 .. m-1,
// so neither the edges +-pi nor the quarter points +-pi/2 are ever hit
// when m is a multiple of four.

inline double grid_spacing(std::size_t m) { return kTwoPi / static_cast<double>(m); }

inline double grid_point(std::size_t j, std::size_t m) {
  return -kPi + (static_cast<double>(j) + 0.5) * grid_spacing(m);
}

std::vector<double> offset_grid(std::size_t m);

/// Throws InvalidParameter unless m is even and at least `minimum`.
void require_grid(std::size_t m, std::size_t minimum, const char* what);

/// Index c of the grid cell [s_c, s_{c+1}) containing `angle` (periodic;
/// the last cell wraps from s_{m-1} to s_0 + 2 pi).
std::size_t cell_of(double angle, std::size_t m);

/// Reduces an angle to (-pi, pi].
double wrap_angle(double angle);

/// Arithmetic mean of a sample vector.
double mean(std::span<const double> values);

}  // namespace phasemod
