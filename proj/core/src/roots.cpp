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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "phasemod/errors.hpp"
#include "phasemod/trigpoly.hpp"

namespace phasemod {
namespace {

constexpr double kTrimRatio = 1e-13;
// Eigenvalues of a root of multiplicity m scatter by ~eps^(1/m); anything
// closer than this is treated as one multiple root.
constexpr double kClusterRadius = 1e-5;

// Parlett-Reinsch balancing, radix 2 so it is exact in floating point.
void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Value of the k-th derivative of the polynomial at z.
cplx derivative(std::span<const double> coeffs, int k, cplx z) {
  cplx acc = 0.0;
  const int deg = static_cast<int>(coeffs.size()) - 1;
  for (int p = deg; p >= k; --p) {
    double falling = 1.0;
    for (int q = 0; q < k; ++q) falling *= static_cast<double>(p - q);
    acc = acc * z + falling * coeffs[p];
  }
  return acc;
}

// Newton on the (m-1)-th derivative: a root of multiplicity m of p is a
// simple root of p^(m-1).
cplx polish(std::span<const double> coeffs, int multiplicity, cplx start) {
  const int k = multiplicity - 1;
  cplx z = start;
  for (int iter = 0; iter < 60; ++iter) {
    const cplx f = derivative(coeffs, k, z);
    const cplx df = derivative(coeffs, k + 1, z);
    if (df == 0.0) break;
    const cplx dz = f / df;
    z -= dz;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return start;
    if (std::abs(dz) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z))) break;
  }
  if (std::abs(z - start) > 10.0 * kClusterRadius * std::max(1.0, std::abs(start))) return start;
  return z;
}

}  // namespace

std::vector<cplx> polynomial_roots(std::span<const double> ascending) {
  double largest = 0.0;
  for (double c : ascending) largest = std::max(largest, std::abs(c));
  if (largest == 0.0 || !std::isfinite(largest)) {
    throw InvalidParameter("polynomial_roots: degenerate (all-zero or non-finite) polynomial");
  }

  std::size_t hi = ascending.size();
  while (hi > 0 && std::abs(ascending[hi - 1]) <= kTrimRatio * largest) --hi;
  std::size_t lo = 0;
  while (lo < hi && ascending[lo] == 0.0) ++lo;

  std::vector<cplx> roots(lo, cplx(0.0, 0.0));
  const std::span<const double> core = ascending.subspan(lo, hi - lo);
  const Eigen::Index degree = static_cast<Eigen::Index>(core.size()) - 1;
  if (degree <= 0) return roots;

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  const double lead = core[degree];
  for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -core[i] / lead;
  balance(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error("polynomial_roots: eigenvalue iteration did not converge");
  const Eigen::VectorXcd eig = solver.eigenvalues();

  std::vector<cplx> raw(eig.data(), eig.data() + eig.size());
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster{i};
    used[i] = true;
    for (std::size_t q = 0; q < cluster.size(); ++q) {
      const cplx zq = raw[cluster[q]];
      for (std::size_t j = 0; j < raw.size(); ++j) {
        if (!used[j] && std::abs(raw[j] - zq) < kClusterRadius * std::max(1.0, std::abs(zq))) {
          used[j] = true;
          cluster.push_back(j);
        }
      }
    }
    cplx centroid = 0.0;
    for (std::size_t idx : cluster) centroid += raw[idx];
    centroid /= static_cast<double>(cluster.size());
    const cplx root = polish(core, static_cast<int>(cluster.size()), centroid);
    roots.insert(roots.end(), cluster.size(), root);
  }
  return roots;
}

std::vector<UnitCircleZero> unit_circle_zeros(std::span<const cplx> roots, double tolerance) {
  std::vector<UnitCircleZero> zeros;
  std::vector<cplx> reps;
  for (const cplx& z : roots) {
    if (std::abs(std::abs(z) - 1.0) > tolerance) continue;
    bool merged = false;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (std::abs(reps[i] - z) < kClusterRadius) {
        ++zeros[i].multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) {
      reps.push_back(z);
      zeros.push_back({std::arg(z), 1});
    }
  }
  std::sort(zeros.begin(), zeros.end(), [](const auto& l, const auto& r) { return l.angle < r.angle; });
  return zeros;
}

}  // namespace phasemod
