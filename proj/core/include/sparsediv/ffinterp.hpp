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

// Sparse interpolation over large prime fields.
//
// All algorithms see the unknown f only through a remainder black box
// returning f(alpha x) rem (x^p - 1). The core idea: if all coefficients of
// f are distinct ("diverse"), each coefficient tags its term across images
// modulo different primes p, so exponent residues can be collected per
// coefficient and Chinese-remaindered directly. A random substitution
// x -> alpha x makes f diverse with probability >= 1/2 once
// q >= T(T-1)D + 1.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sparsediv/blackbox.hpp"
#include "sparsediv/numt.hpp"
#include "sparsediv/poly.hpp"

namespace sparsediv {

struct InterpConfig {
  std::uint64_t terms = 1;  // T, bound on the number of nonzero terms
  BigInt degree_bound = 2;  // D, deg f < D
  double mu = 0.1;          // failure probability
  bool check_field = true;  // reject q < T(T-1)D + 1

  /// Throws std::invalid_argument unless T >= 1, D >= 2, 0 < mu < 1.
  void validate() const;
};

enum class InterpStatus { ok, failed };

struct InterpResult {
  SparsePoly<Fq> poly;
  ProbeStats stats;
  InterpStatus status = InterpStatus::ok;
  std::string reason;  // set when failed
  std::uint64_t diversify_attempts = 0;
  std::uint64_t search_max_p = 0;  // largest prime of the small-prime search (adaptive only)
  std::uint64_t iterations = 1;    // Las Vegas rounds

  bool ok() const { return status == InterpStatus::ok; }
};

/// ceil(log2(3/mu)).
std::uint64_t sparsity_probe_budget(double mu);
/// ceil(2 ln(3/mu) + 4 ln D / ln lambda).
std::uint64_t exponent_probe_budget(double mu, const BigInt& degree_bound, std::uint64_t lambda);
/// max(1, ceil((T-1) log2 D)).
std::uint64_t verify_probe_budget(std::uint64_t terms, const BigInt& degree_bound);

/// Throws std::invalid_argument if q < T(T-1)D + 1.
void require_large_field(const PrimeField& field, std::uint64_t terms, const BigInt& degree_bound);

struct SparsityEstimate {
  std::uint64_t t = 0;    // largest image sparsity seen
  std::uint64_t rho = 0;  // first prime attaining it
};

/// Probes f at ceil(log2(3/mu)) random primes in {lambda..2 lambda}.
SparsityEstimate find_sparsity(const FqBlackBox& box, const InterpConfig& cfg, Rng& rng);

/// Image of f(alpha x) rem (x^rho - 1) if it has exactly t pairwise distinct
/// nonzero coefficients, nullopt otherwise.
std::optional<DenseImage<Fq>> try_diversifier(const FqBlackBox& box, std::uint64_t t,
                                              std::uint64_t rho, Fq alpha);

struct Diversification {
  std::optional<Fq> alpha;
  std::optional<DenseImage<Fq>> image;  // accepted image at rho
  std::uint64_t attempts = 0;
};

/// Up to ceil(log2(3/mu)) uniform draws of alpha in F_q^*.
Diversification diversify_ff(const FqBlackBox& box, std::uint64_t t, std::uint64_t rho, double mu,
                             Rng& rng);

/// Collects exponent residues per key coefficient. An image is used only if
/// it has exactly t nonzero terms whose coefficients are exactly the key.
class ExponentMatcher {
 public:
  /// Throws std::invalid_argument if the key has repeated or zero entries.
  explicit ExponentMatcher(std::vector<Fq> key);

  /// Returns true if the image was consistent and its prime was new.
  bool add_image(const DenseImage<Fq>& img);

  std::size_t size() const { return key_.size(); }
  const std::vector<Fq>& key() const { return key_; }
  /// Product of the moduli used so far.
  const BigInt& modulus() const;
  /// CRT values, aligned with key().
  std::vector<BigInt> exponents() const;
  std::size_t images_used() const { return used_moduli_.size(); }

 private:
  std::vector<Fq> key_;
  std::unordered_map<Fq, std::size_t> slot_;
  std::vector<CrtAccumulator> acc_;
  std::vector<std::uint64_t> used_moduli_;
  BigInt one_ = 1;
};

struct ExponentRecovery {
  bool ok = false;
  std::vector<BigInt> exponents;  // aligned with the key
  BigInt modulus = 1;
  std::uint64_t probes = 0;
  std::uint64_t good_images = 0;
};

/// Probes ceil(2 ln(3/mu) + 4 ln D / ln lambda) random primes of
/// {lambda..2 lambda} on the diversified box. ok iff the product of the
/// usable primes reached D.
ExponentRecovery recover_exponents(const FqBlackBox& diversified, const std::vector<Fq>& key,
                                   const InterpConfig& cfg, Rng& rng);

/// Monte Carlo interpolation; correct with probability >= 1 - mu.
InterpResult interpolate_mc(const FqBlackBox& box, const InterpConfig& cfg, Rng& rng);

enum class ZeroTest { zero, nonzero };

struct VerifyResult {
  ZeroTest verdict = ZeroTest::zero;
  std::uint64_t probes = 0;
  std::uint64_t witness = 0;  // prime with a nonzero image
};

/// Deterministic zero test for a T-sparse f with deg f < D: probes the
/// least max(1, ceil((T-1) log2 D)) primes. Never wrong.
VerifyResult verify_zero(const FqBlackBox& box, std::uint64_t terms, const BigInt& degree_bound);

/// Las Vegas: Monte Carlo with mu = 1/2, then verify f - g = 0 with bound
/// 2T; repeats until verified. max_iterations == 0 means unbounded.
InterpResult interpolate_lv(const FqBlackBox& box, const InterpConfig& cfg, Rng& rng,
                            std::uint64_t max_iterations = 0);

/// Adaptive variant: one probe in {lambda..2 lambda} fixes t and the
/// diversified key; exponents come from consecutive primes starting at t^2.
InterpResult interpolate_adaptive(const FqBlackBox& box, const InterpConfig& cfg, Rng& rng);

/// Baseline: recovers prod (y - e_i) over Z by Chinese remaindering its
/// images from good primes, then finds its integer roots.
InterpResult gs_interpolate_mc(const FqBlackBox& box, const InterpConfig& cfg, Rng& rng);

/// Coefficients (low to high, monic) of prod (y - r_i).
std::vector<BigInt> symmetric_poly(std::span<const BigInt> roots);

/// Distinct roots in [0, bound) of a monic integer polynomial given low to
/// high, found modulo a prime P > bound by equal-degree splitting. Sorted.
std::vector<BigInt> integer_roots(std::span<const BigInt> coeffs, const BigInt& bound, Rng& rng);

}  // namespace sparsediv
