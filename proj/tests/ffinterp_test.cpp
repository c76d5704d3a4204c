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

#include "gtest/gtest.h"
#include "sparsediv/bench.hpp"
#include "sparsediv/ffinterp.hpp"

namespace sparsediv {
namespace {

const PrimeField kF61((std::uint64_t{1} << 61) - 1);

InterpConfig config(std::uint64_t terms, const BigInt& degree_bound, double mu = 0.1) {
  InterpConfig cfg;
  cfg.terms = terms;
  cfg.degree_bound = degree_bound;
  cfg.mu = mu;
  return cfg;
}

TEST(Budgets, Examples) {
  EXPECT_EQ(sparsity_probe_budget(0.1), 5u);
  EXPECT_EQ(exponent_probe_budget(0.1, BigInt(1) << 20, 2080), 15u);
  EXPECT_EQ(verify_probe_budget(3, BigInt(16)), 8u);
  EXPECT_EQ(verify_probe_budget(1, BigInt(1) << 40), 1u);
}

TEST(InterpConfig, Validation) {
  EXPECT_THROW(config(0, BigInt(4)).validate(), std::invalid_argument);
  EXPECT_THROW(config(1, BigInt(1)).validate(), std::invalid_argument);
  EXPECT_THROW(config(1, BigInt(4), 1.0).validate(), std::invalid_argument);
  EXPECT_NO_THROW(config(1, BigInt(2)).validate());
}

TEST(RequireLargeField, RejectsSmallQ) {
  EXPECT_THROW(require_large_field(PrimeField(65521), 10, BigInt(1) << 20), std::invalid_argument);
  EXPECT_NO_THROW(require_large_field(kF61, 40, BigInt(1) << 32));
}

TEST(FindSparsity, ZeroAndAlwaysGood) {
  Rng rng(1);
  const SparseFqBackend zero(kF61, SparsePoly<Fq>());
  EXPECT_EQ(find_sparsity(zero, config(3, BigInt(100)), rng).t, 0u);
  EXPECT_EQ(zero.stats().probes, 5u);
  // x + x^2: every prime >= 21 is good.
  const SparseFqBackend f(kF61, SparsePoly<Fq>({{Fq{1}, BigInt(1)}, {Fq{1}, BigInt(2)}}));
  const SparsityEstimate est = find_sparsity(f, config(2, BigInt(100)), rng);
  EXPECT_EQ(est.t, 2u);
  EXPECT_TRUE(is_prime(est.rho));
}

TEST(TryDiversifier, Examples) {
  const PrimeField F(7);
  const SparseFqBackend f(F, SparsePoly<Fq>({{Fq{2}, BigInt(3)}, {Fq{2}, BigInt(1)}}));
  const auto img = try_diversifier(f, 2, 5, Fq{3});
  ASSERT_TRUE(img.has_value());
  EXPECT_EQ((*img)[3], Fq{5});
  EXPECT_EQ((*img)[1], Fq{6});
  EXPECT_FALSE(try_diversifier(f, 2, 5, F.one()).has_value());
}

TEST(ExponentMatcher, CrtExample) {
  const PrimeField F(101);
  ExponentMatcher m({Fq{2}, Fq{5}});
  DenseImage<Fq> mod5(5);
  mod5[3] = Fq{2};
  mod5[1] = Fq{5};
  DenseImage<Fq> mod7(7);
  mod7[4] = Fq{2};
  mod7[2] = Fq{5};
  EXPECT_TRUE(m.add_image(mod5));
  EXPECT_TRUE(m.add_image(mod7));
  EXPECT_FALSE(m.add_image(mod7));  // prime already used
  EXPECT_EQ(m.modulus(), 35);
  EXPECT_EQ(m.exponents(), (std::vector<BigInt>{18, 16}));
}

TEST(ExponentMatcher, RejectsInconsistentImages) {
  ExponentMatcher m({Fq{2}, Fq{5}});
  DenseImage<Fq> collided(5);
  collided[1] = Fq{7};
  EXPECT_FALSE(m.add_image(collided));
  DenseImage<Fq> foreign(5);
  foreign[1] = Fq{2};
  foreign[2] = Fq{9};
  EXPECT_FALSE(m.add_image(foreign));
  EXPECT_EQ(m.images_used(), 0u);
  EXPECT_THROW(ExponentMatcher({Fq{2}, Fq{2}}), std::invalid_argument);
}

TEST(InterpolateMc, TrivialCases) {
  Rng rng(3);
  const SparseFqBackend x(kF61, SparsePoly<Fq>({{Fq{1}, BigInt(1)}}));
  const InterpResult r = interpolate_mc(x, config(1, BigInt(2)), rng);
  ASSERT_TRUE(r.ok()) << r.reason;
  EXPECT_EQ(r.poly, x.poly());

  const SparseFqBackend zero(kF61, SparsePoly<Fq>());
  const InterpResult z = interpolate_mc(zero, config(4, BigInt(1000)), rng);
  EXPECT_TRUE(z.ok());
  EXPECT_TRUE(z.poly.is_zero());
  EXPECT_EQ(z.stats.probes, 5u);
}

TEST(InterpolateMc, RecoversRandomInstances) {
  Rng rng(5);
  int exact = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = bench::gen_ff(kF61, 10, BigInt(1) << 16, 1000 + trial);
    const SparseFqBackend box(kF61, f);
    const InterpResult r = interpolate_mc(box, config(10, BigInt(1) << 16, 0.05), rng);
    if (r.ok() && r.poly == f) ++exact;
  }
  EXPECT_GE(exact, 27);
}

TEST(InterpolateMc, HugeDegree) {
  Rng rng(6);
  const BigInt D = BigInt(1) << 200;
  const auto f = bench::gen_ff(PrimeField(kF61), 3, D, 17, true);
  const SparseFqBackend box(kF61, f);
  InterpConfig cfg = config(3, D);
  cfg.check_field = false;  // 61-bit q is below T(T-1)D + 1 here
  const InterpResult r = interpolate_lv(box, cfg, rng, 32);
  ASSERT_TRUE(r.ok()) << r.reason;
  EXPECT_EQ(r.poly, f);
}

TEST(InterpolateMc, ThrowsOnSmallField) {
  Rng rng(1);
  const SparseFqBackend box(PrimeField(65521), SparsePoly<Fq>({{Fq{1}, BigInt(5)}}));
  EXPECT_THROW(interpolate_mc(box, config(10, BigInt(1) << 20), rng), std::invalid_argument);
}

TEST(VerifyZero, Examples) {
  const SparseFqBackend zero(kF61, SparsePoly<Fq>());
  const VerifyResult z = verify_zero(zero, 3, BigInt(16));
  EXPECT_EQ(z.verdict, ZeroTest::zero);
  EXPECT_EQ(z.probes, 8u);
  EXPECT_EQ(zero.stats().max_p, 19u);

  const SparseFqBackend f(kF61, SparsePoly<Fq>({{Fq{1}, BigInt(4)}, {Fq{1}, BigInt(2)}}));
  const VerifyResult nz = verify_zero(f, 2, BigInt(16));
  EXPECT_EQ(nz.verdict, ZeroTest::nonzero);
  EXPECT_EQ(nz.witness, 2u);

  const SparseFqBackend c(kF61, SparsePoly<Fq>({{Fq{9}, BigInt(0)}}));
  EXPECT_EQ(verify_zero(c, 1, BigInt(2)).witness, 2u);
}

// x^a - x^b with a - b = product of the first k primes vanishes modulo
// x^p - 1 for each of those p; the test must still find a witness.
TEST(VerifyZero, AdversarialGap) {
  BigInt gap = 1;
  for (std::uint64_t p : primes_from(2, 12)) gap *= static_cast<unsigned long>(p);
  const BigInt D = gap + 2;
  const SparseFqBackend f(kF61, SparsePoly<Fq>({{Fq{1}, gap + 1}, {kF61.neg(Fq{1}), BigInt(1)}}));
  const VerifyResult v = verify_zero(f, 2, D);
  EXPECT_EQ(v.verdict, ZeroTest::nonzero);
  EXPECT_EQ(v.witness, 41u);
}

TEST(InterpolateLv, AdversarialInstanceIsExact) {
  Rng rng(8);
  const BigInt D = BigInt(1) << 32;
  const SparsePoly<Fq> f({{Fq{1}, BigInt(1) << 31}, {Fq{1}, BigInt(1)}});
  const SparseFqBackend box(kF61, f);
  const InterpResult r = interpolate_lv(box, config(2, D), rng);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.poly, f);
}

TEST(InterpolateLv, ZeroPolynomial) {
  Rng rng(2);
  const SparseFqBackend zero(kF61, SparsePoly<Fq>());
  const InterpResult r = interpolate_lv(zero, config(5, BigInt(1) << 12), rng);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.poly.is_zero());
  EXPECT_EQ(r.iterations, 1u);
}

TEST(InterpolateLv, IterationCapReportsFailure) {
  Rng rng(2);
  // The degree bound is wrong, so no round can verify.
  const SparseFqBackend box(kF61, SparsePoly<Fq>({{Fq{7}, BigInt(5000)}}));
  const InterpResult r = interpolate_lv(box, config(1, BigInt(1) << 12), rng, 3);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.reason, "iteration-cap");
  EXPECT_EQ(r.iterations, 3u);
}

TEST(InterpolateAdaptive, RecoversRandomInstances) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = bench::gen_ff(kF61, 1 + trial % 20, BigInt(1) << 24, 50 + trial);
    const SparseFqBackend box(kF61, f);
    const InterpResult r = interpolate_adaptive(box, config(f.sparsity(), BigInt(1) << 24), rng);
    ASSERT_TRUE(r.ok()) << r.reason;
    EXPECT_EQ(r.poly, f);
    EXPECT_GT(r.search_max_p, 0u);
  }
}

TEST(InterpolateAdaptive, SingleTermUsesSmallPrimes) {
  Rng rng(10);
  const SparsePoly<Fq> f({{Fq{5}, BigInt(123456)}});
  const SparseFqBackend box(kF61, f);
  const InterpResult r = interpolate_adaptive(box, config(1, BigInt(1) << 20), rng);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.poly, f);
  EXPECT_LE(r.search_max_p, 100u);
}

}  // namespace
}  // namespace sparsediv
