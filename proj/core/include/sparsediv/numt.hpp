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

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sparsediv {

using Rng = std::mt19937_64;

/// Arbitrary-precision nonnegative integer used for exponents, degree
/// bounds and CRT values.
using BigInt = mpz_class;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Uniform integer in [0, bound); bound must be positive.
BigInt uniform_below(const BigInt& bound, Rng& rng);

/// Natural logarithm of a positive big integer, in double precision.
double ln(const BigInt& x);
double log2(const BigInt& x);

/// Element of a prime field. The modulus lives in the PrimeField that made it.
struct Fq {
  std::uint64_t v = 0;

  friend constexpr bool operator==(Fq, Fq) = default;
  friend constexpr auto operator<=>(Fq, Fq) = default;
};

constexpr bool is_zero(Fq a) { return a.v == 0; }

/// Arithmetic in F_q for a prime q < 2^63.
class PrimeField {
 public:
  /// Throws std::invalid_argument unless q is a prime below 2^63.
  explicit PrimeField(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }

  Fq zero() const { return Fq{0}; }
  Fq one() const { return Fq{1}; }
  Fq from_uint(std::uint64_t a) const { return Fq{a % q_}; }
  Fq from_int(std::int64_t a) const;
  Fq from_big(const BigInt& a) const;

  Fq add(Fq a, Fq b) const {
    std::uint64_t s = a.v + b.v;
    return Fq{s >= q_ ? s - q_ : s};
  }
  Fq sub(Fq a, Fq b) const { return Fq{a.v >= b.v ? a.v - b.v : a.v + q_ - b.v}; }
  Fq neg(Fq a) const { return Fq{a.v == 0 ? 0 : q_ - a.v}; }
  Fq mul(Fq a, Fq b) const {
    return Fq{static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a.v) * b.v % q_)};
  }
  /// Throws std::domain_error on zero.
  Fq inv(Fq a) const;
  Fq pow(Fq a, std::uint64_t e) const;
  /// Reduces e modulo q-1 first (Fermat), so e may be arbitrarily large.
  Fq pow(Fq a, const BigInt& e) const;

  Fq random(Rng& rng) const;
  Fq random_nonzero(Rng& rng) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t q_;
};

/// The closed prime interval {lo, ..., hi} with hi = 2 lo.
class PrimeRange {
 public:
  /// Throws std::invalid_argument if lo < 21.
  explicit PrimeRange(std::uint64_t lo);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
};

/// max(21, ceil((5/3) T (T-1) ln D)). Requires T >= 1 and D >= 2.
std::uint64_t lambda_bound(std::uint64_t terms, const BigInt& degree_bound);

/// Lower end of the probe range used by the interpolators: lambda_bound raised
/// to ceil(3 ln D), so the primes in {lo, ..., 2 lo} multiply past D. Equal to
/// lambda_bound whenever T >= 2.
std::uint64_t probe_lambda(std::uint64_t terms, const BigInt& degree_bound);

/// Uniform prime in the range by rejection sampling of odd candidates.
std::uint64_t random_prime(const PrimeRange& range, Rng& rng);

/// Draws primes from a range without replacement. Once every prime has been
/// handed out the pool refills, so draws never fail; callers that need
/// distinct moduli must watch for repeats themselves.
class PrimeSampler {
 public:
  explicit PrimeSampler(const PrimeRange& range);

  std::uint64_t next(Rng& rng);

 private:
  PrimeRange range_;
  std::vector<std::uint64_t> pool_;  // empty when the range is too wide to sieve
  std::size_t used_ = 0;
  std::unordered_set<std::uint64_t> seen_;
};

/// Consecutive primes >= start, none skipped.
class PrimeStream {
 public:
  explicit PrimeStream(std::uint64_t start = 2);

  std::uint64_t next();

 private:
  std::uint64_t cursor_;
};

/// First `count` primes >= start.
std::vector<std::uint64_t> primes_from(std::uint64_t start, std::size_t count);

/// All primes in [lo, hi], by segmented sieve.
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);

/// Incremental Chinese remaindering: x mod M built from residues modulo
/// pairwise coprime word-sized moduli.
class CrtAccumulator {
 public:
  /// Throws std::invalid_argument if r >= p or gcd(p, M) != 1.
  void add(std::uint64_t r, std::uint64_t p);

  const BigInt& value() const { return x_; }
  const BigInt& modulus() const { return m_; }

 private:
  BigInt x_ = 0;
  BigInt m_ = 1;
};

/// Returns (x, M) with M = prod p_i, 0 <= x < M, x = r_i mod p_i.
/// Throws std::invalid_argument on non-coprime moduli.
std::pair<BigInt, BigInt> crt_combine(
    std::span<const std::pair<std::uint64_t, std::uint64_t>> residues);

/// splitmix64 finalizer; used to derive independent seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace sparsediv

template <>
struct std::hash<sparsediv::Fq> {
  std::size_t operator()(sparsediv::Fq a) const noexcept {
    return std::hash<std::uint64_t>{}(a.v);
  }
};
