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

#include <stdexcept>
#include <string>

namespace phasemod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric parameter is out of range (non-positive frequency, odd grid
/// size, grid too coarse for the requested harmonic, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Samples do not satisfy phi*(s) = phi(-s), so the cosine/sine
/// coefficients come out complex.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// A phase carries a linear trend (endpoint mismatch), so the
/// principal-value integral over the real line does not exist.
class TrendError : public Error {
 public:
  using Error::Error;
};

/// Normalisation constant c0 is zero, negative or inconsistent with the
/// mean of the supplied log-modulus.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Operation is only defined for cyclic parameters (integer K/omega).
class NotCyclicError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace phasemod
