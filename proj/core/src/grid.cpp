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

#include "phasemod/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "phasemod/errors.hpp"

namespace phasemod {

std::vector<double> offset_grid(std::size_t m) {
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) s[j] = grid_point(j, m);
  return s;
}

void require_grid(std::size_t m, std::size_t minimum, const char* what) {
  if (m % 2 != 0 || m < minimum || m < 4) {
    throw InvalidParameter(std::string(what) + ": grid size " + std::to_string(m) +
                           " must be even and at least " + std::to_string(std::max<std::size_t>(minimum, 4)));
  }
}

std::size_t cell_of(double angle, std::size_t m) {
  const double h = grid_spacing(m);
  const double x = (angle + kPi) / h - 0.5;
  const double md = static_cast<double>(m);
  double c = std::floor(x);
  c = std::fmod(c, md);
  if (c < 0) c += md;
  return static_cast<std::size_t>(c) % m;
}

double wrap_angle(double angle) {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace phasemod
