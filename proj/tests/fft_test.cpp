// Copyright 2026 The sparsediv Authors
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

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "sparsediv/fft.hpp"

namespace sparsediv {
namespace {

std::vector<Complex> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

double rel_err(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

class DftSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(DftSizes, MatchesNaiveTransform) {
  const std::size_t n = GetParam();
  const auto v = random_vector(n, n);
  // Large lengths: check a spread of output bins only.
  std::vector<std::size_t> bins;
  const std::size_t step = n > 2000 ? n / 37 : 1;
  for (std::size_t k = 0; k < n; k += step) bins.push_back(k);
  for (int sign : {-1, 1}) {
    std::vector<Complex> ref;
    for (std::size_t k : bins) {
      long double re = 0;
      long double im = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const long double a = sign * 2.0L * std::numbers::pi_v<long double> *
                              static_cast<long double>((j * k) % n) / static_cast<long double>(n);
        re += v[j].real() * std::cos(a) - v[j].imag() * std::sin(a);
        im += v[j].real() * std::sin(a) + v[j].imag() * std::cos(a);
      }
      ref.push_back({static_cast<double>(re), static_cast<double>(im)});
    }
    auto full = v;
    dft_plan(n).transform(full, sign);
    std::vector<Complex> got;
    for (std::size_t k : bins) got.push_back(full[k]);
    EXPECT_LE(rel_err(got, ref), 1e-12) << "n=" << n << " sign=" << sign;
  }
}

TEST_P(DftSizes, RoundTripIsIdentity) {
  const std::size_t n = GetParam();
  const auto v = random_vector(n, 7 * n);
  EXPECT_LE(rel_err(interpolate_from_roots(evaluate_on_roots(v)), v), 1e-12) << n;
}

INSTANTIATE_TEST_SUITE_P(Lengths, DftSizes,
                         ::testing::Values(1, 2, 3, 5, 8, 23, 64, 97, 1009, 1024, 65521, 65537,
                                           65539));

TEST(Dft, RejectsBadSign) {
  std::vector<Complex> v(4);
  EXPECT_THROW(dft_plan(4).transform(v, 0), std::invalid_argument);
}

}  // namespace
}  // namespace sparsediv
