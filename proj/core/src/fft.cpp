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

#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace phasemod::detail {
namespace {

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

class Plan {
 public:
  explicit Plan(fftw_plan p) : plan_(p) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

std::vector<cplx> complex_transform(std::span<const cplx> x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<cplx> in(x.begin(), x.end());
  std::vector<cplx> out(x.size());
  if (x.empty()) return out;
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                           reinterpret_cast<fftw_complex*>(out.data()), sign, kFlags);
  }
  Plan plan(raw);
  plan.execute();
  return out;
}

}  // namespace

std::vector<cplx> fft_forward(std::span<const cplx> x) { return complex_transform(x, FFTW_FORWARD); }

std::vector<cplx> fft_backward(std::span<const cplx> spectrum) {
  return complex_transform(spectrum, FFTW_BACKWARD);
}

std::vector<cplx> rfft(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> in(x.begin(), x.end());
  std::vector<cplx> out(x.size() / 2 + 1);
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()), kFlags);
  }
  Plan plan(raw);
  plan.execute();
  return out;
}

std::vector<double> irfft(std::span<const cplx> half_spectrum, std::size_t m) {
  // c2r destroys its input, so work on a copy.
  std::vector<cplx> in(half_spectrum.begin(), half_spectrum.end());
  in.resize(m / 2 + 1);
  std::vector<double> out(m);
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_c2r_1d(static_cast<int>(m), reinterpret_cast<fftw_complex*>(in.data()), out.data(),
                               kFlags);
  }
  Plan plan(raw);
  plan.execute();
  return out;
}

}  // namespace phasemod::detail
