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

#include <algorithm>

#include "gtest/gtest.h"
#include "sparsediv/bench.hpp"
#include "sparsediv/ffinterp.hpp"

namespace sparsediv {
namespace {

const PrimeField kF61((std::uint64_t{1} << 61) - 1);

TEST(SymmetricPoly, Example) {
  const std::vector<BigInt> roots{1, 3};
  EXPECT_EQ(symmetric_poly(roots), (std::vector<BigInt>{3, -4, 1}));
  EXPECT_EQ(symmetric_poly(std::vector<BigInt>{7}), (std::vector<BigInt>{-7, 1}));
  EXPECT_EQ(symmetric_poly(std::vector<BigInt>{}), (std::vector<BigInt>{1}));
}

TEST(IntegerRoots, RecoversRootsFromExpandedProduct) {
  Rng rng(4);
  for (const BigInt& bound : std::vector<BigInt>{BigInt(100), BigInt(1) << 40, BigInt(1) << 90}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<BigInt> roots = bench::random_exponents(1 + trial, bound, rng);
      const auto coeffs = symmetric_poly(roots);
      EXPECT_EQ(integer_roots(coeffs, bound, rng), roots);
    }
  }
}

TEST(IntegerRoots, IgnoresNonIntegerAndOutOfRangeRoots) {
  Rng rng(1);
  // (y - 2)(y - 50)(y^2 + 1): only 2 lies below 10; y^2 + 1 has no integer roots.
  const auto a = symmetric_poly(std::vector<BigInt>{2, 50});
  std::vector<BigInt> c(a.size() + 2, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    c[i] += a[i];
    c[i + 2] += a[i];
  }
  EXPECT_EQ(integer_roots(c, BigInt(10), rng), (std::vector<BigInt>{2}));
  EXPECT_THROW(integer_roots(std::vector<BigInt>{1, 2}, BigInt(10), rng), std::invalid_argument);
}

TEST(GsInterpolate, Example) {
  Rng rng(2);
  const SparsePoly<Fq> f({{Fq{1}, BigInt(3)}, {Fq{1}, BigInt(1)}});
  const SparseFqBackend box(kF61, f);
  InterpConfig cfg;
  cfg.terms = 2;
  cfg.degree_bound = 4;
  const InterpResult r = gs_interpolate_mc(box, cfg, rng);
  ASSERT_TRUE(r.ok()) << r.reason;
  EXPECT_EQ(r.poly, f);
}

TEST(GsInterpolate, RandomInstancesAndProbeRatio) {
  Rng rng(3);
  int exact = 0;
  std::uint64_t gs_probes = 0;
  std::uint64_t alg1_probes = 0;
  const BigInt D = BigInt(1) << 16;
  InterpConfig cfg;
  cfg.terms = 10;
  cfg.degree_bound = D;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = bench::gen_ff(kF61, 10, D, 300 + trial);
    const SparseFqBackend box(kF61, f);
    const InterpResult r = gs_interpolate_mc(box, cfg, rng);
    if (r.ok() && r.poly == f) ++exact;
    gs_probes += r.stats.probes;
    alg1_probes += interpolate_mc(box, cfg, rng).stats.probes;
  }
  EXPECT_GE(exact, 18);
  EXPECT_GE(4 * gs_probes, 10 * alg1_probes);
}

TEST(GsInterpolate, SingleTerm) {
  Rng rng(5);
  const SparsePoly<Fq> f({{Fq{42}, BigInt(777)}});
  const SparseFqBackend box(kF61, f);
  InterpConfig cfg;
  cfg.terms = 1;
  cfg.degree_bound = 1000;
  const InterpResult r = gs_interpolate_mc(box, cfg, rng);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.poly, f);
}

}  // namespace
}  // namespace sparsediv
