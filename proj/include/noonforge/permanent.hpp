// Copyright 2026 The noonforge Authors
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

#include <Eigen/Dense>

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "noonforge/errors.hpp"

namespace noonforge {

inline constexpr int kDefaultPermanentCap = 16;

namespace detail {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

}  // namespace detail

/// Matrix permanent by Ryser's formula, visiting column subsets in Gray-code
/// order so each step updates the row sums with a single column. O(2^n n).
///
/// Row sums and the outer sum are carried in extended precision; the outer sum
/// is compensated.
template <typename Derived>
std::complex<double> permanent(const Eigen::MatrixBase<Derived>& a,
                               int cap = kDefaultPermanentCap) {
  using LComplex = std::complex<long double>;
  const auto n = static_cast<int>(a.rows());
  if (a.rows() != a.cols()) throw ShapeError("permanent needs a square matrix");
  if (n > cap) {
    throw CapacityError("permanent of a " + std::to_string(n) + "x" + std::to_string(n) +
                        " matrix exceeds the cap of " + std::to_string(cap));
  }
  if (n == 0) return 1.0;

  std::vector<LComplex> row_sums(static_cast<std::size_t>(n), LComplex{0.0L, 0.0L});
  detail::CompensatedSum re;
  detail::CompensatedSum im;
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int col = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << col;
    gray ^= bit;
    const bool added = (gray & bit) != 0;
    for (int i = 0; i < n; ++i) {
      const std::complex<double> z = a(i, col);
      const LComplex lz{z.real(), z.imag()};
      if (added) {
        row_sums[static_cast<std::size_t>(i)] += lz;
      } else {
        row_sums[static_cast<std::size_t>(i)] -= lz;
      }
    }
    LComplex prod{1.0L, 0.0L};
    for (const auto& s : row_sums) prod *= s;
    // Overall sign is (-1)^(n - |S|).
    const bool negative = ((n - std::popcount(gray)) & 1) != 0;
    if (negative) prod = -prod;
    re.add(prod.real());
    im.add(prod.imag());
  }
  return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

}  // namespace noonforge
