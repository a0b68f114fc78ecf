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

// Thin FFTW wrapper. Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED
// so results do not depend on buffer alignment (byte-identical reruns).

#include <complex>
#include <span>
#include <vector>

namespace phasemod::detail {

using cplx = std::complex<double>;

/// X_p = sum_j x_j exp(-2 pi i j p / m).
std::vector<cplx> fft_forward(std::span<const cplx> x);

/// x_j = sum_p X_p exp(+2 pi i j p / m), unnormalised.
std::vector<cplx> fft_backward(std::span<const cplx> spectrum);

/// Real-input forward transform; returns m/2 + 1 bins.
std::vector<cplx> rfft(std::span<const double> x);

/// Inverse of rfft for a length-m real signal, unnormalised.
std::vector<double> irfft(std::span<const cplx> half_spectrum, std::size_t m);

}  // namespace phasemod::detail
