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

#include "sparsediv/numt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sparsediv {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a modulo m for gcd(a, m) = 1; 0 otherwise.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::uint64_t r = m, new_r = a % m;
  while (new_r != 0) {
    std::uint64_t quotient = r / new_r;
    std::int64_t tmp_t = t - static_cast<std::int64_t>(quotient) * new_t;
    t = new_t;
    new_t = tmp_t;
    std::uint64_t tmp_r = r - quotient * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) return 0;
  return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(m))
               : static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kSmall) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven witness set below 3.3e24.
  for (std::uint64_t a : kSmall) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BigInt uniform_below(const BigInt& bound, Rng& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if (bound.fits_ulong_p()) {
    std::uniform_int_distribution<unsigned long> dist(0, bound.get_ui() - 1);
    return BigInt(dist(rng));
  }
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t limbs = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (limbs - 1);
  for (;;) {
    BigInt x = 0;
    for (std::size_t i = 0; i < limbs; ++i) {
      std::uint64_t limb = rng();
      if (i == 0 && top_bits < 64) limb &= (std::uint64_t{1} << top_bits) - 1;
      x <<= 64;
      x += BigInt(static_cast<unsigned long>(limb));
    }
    if (x < bound) return x;
  }
}

double ln(const BigInt& x) {
  if (x <= 0) throw std::domain_error("ln: argument must be positive");
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp) * std::numbers::ln2;
}

double log2(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log2: argument must be positive");
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log2(mantissa) + static_cast<double>(exp);
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q >= (std::uint64_t{1} << 63) || !is_prime(q)) {
    throw std::invalid_argument("PrimeField: modulus " + std::to_string(q) +
                                " is not a prime below 2^63");
  }
}

Fq PrimeField::from_int(std::int64_t a) const {
  const std::int64_t r = a % static_cast<std::int64_t>(q_);
  return Fq{r < 0 ? static_cast<std::uint64_t>(r + static_cast<std::int64_t>(q_))
                  : static_cast<std::uint64_t>(r)};
}

Fq PrimeField::from_big(const BigInt& a) const {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), q_);
  return Fq{r.get_ui()};
}

Fq PrimeField::inv(Fq a) const {
  if (a.v == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
  return Fq{invmod(a.v, q_)};
}

Fq PrimeField::pow(Fq a, std::uint64_t e) const { return Fq{powmod(a.v, e, q_)}; }

Fq PrimeField::pow(Fq a, const BigInt& e) const {
  if (e < 0) return pow(inv(a), BigInt(-e));
  if (a.v == 0) return e == 0 ? one() : zero();
  return pow(a, static_cast<std::uint64_t>(mpz_fdiv_ui(e.get_mpz_t(), q_ - 1)));
}

Fq PrimeField::random(Rng& rng) const {
  std::uniform_int_distribution<std::uint64_t> dist(0, q_ - 1);
  return Fq{dist(rng)};
}

Fq PrimeField::random_nonzero(Rng& rng) const {
  std::uniform_int_distribution<std::uint64_t> dist(1, q_ - 1);
  return Fq{dist(rng)};
}

PrimeRange::PrimeRange(std::uint64_t lo) : lo_(lo), hi_(2 * lo) {
  if (lo < 21) throw std::invalid_argument("PrimeRange: lower end must be at least 21");
  if (lo > (std::uint64_t{1} << 62)) throw std::invalid_argument("PrimeRange: too large");
}

std::uint64_t lambda_bound(std::uint64_t terms, const BigInt& degree_bound) {
  if (terms < 1 || degree_bound < 2) {
    throw std::invalid_argument("lambda_bound: need T >= 1 and D >= 2");
  }
  constexpr std::uint64_t kFloor = 21;
  if (terms == 1) return kFloor;
  const double t = static_cast<double>(terms);
  const double x = (5.0 / 3.0) * t * (t - 1.0) * ln(degree_bound);
  const double guarded = std::ceil(std::nextafter(x, std::numeric_limits<double>::infinity()));
  return std::max<std::uint64_t>(kFloor, static_cast<std::uint64_t>(guarded));
}

std::uint64_t probe_lambda(std::uint64_t terms, const BigInt& degree_bound) {
  const double cover = std::ceil(3.0 * ln(degree_bound));
  return std::max(lambda_bound(terms, degree_bound), static_cast<std::uint64_t>(cover));
}

std::uint64_t random_prime(const PrimeRange& range, Rng& rng) {
  const std::uint64_t first_odd = range.lo() | 1;
  const std::uint64_t count = (range.hi() - first_odd) / 2 + 1;
  std::uniform_int_distribution<std::uint64_t> dist(0, count - 1);
  // Bertrand guarantees a prime; the cap only guards against a broken rng.
  for (std::uint64_t attempt = 0; attempt < 100 * count + 1000; ++attempt) {
    const std::uint64_t candidate = first_odd + 2 * dist(rng);
    if (is_prime(candidate)) return candidate;
  }
  throw std::logic_error("random_prime: no prime found in range");
}

PrimeSampler::PrimeSampler(const PrimeRange& range) : range_(range) {
  constexpr std::uint64_t kSieveLimit = std::uint64_t{1} << 24;
  if (range.hi() - range.lo() <= kSieveLimit) pool_ = primes_between(range.lo(), range.hi());
}

std::uint64_t PrimeSampler::next(Rng& rng) {
  if (!pool_.empty()) {
    if (used_ == pool_.size()) used_ = 0;
    std::uniform_int_distribution<std::size_t> dist(used_, pool_.size() - 1);
    std::swap(pool_[used_], pool_[dist(rng)]);
    return pool_[used_++];
  }
  for (;;) {
    const std::uint64_t p = random_prime(range_, rng);
    if (seen_.insert(p).second) return p;
  }
}

PrimeStream::PrimeStream(std::uint64_t start) : cursor_(std::max<std::uint64_t>(start, 2)) {}

std::uint64_t PrimeStream::next() {
  while (!is_prime(cursor_)) ++cursor_;
  return cursor_++;
}

std::vector<std::uint64_t> primes_from(std::uint64_t start, std::size_t count) {
  PrimeStream stream(start);
  std::vector<std::uint64_t> out;
  out.reserve(count);
  while (out.size() < count) out.push_back(stream.next());
  return out;
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  lo = std::max<std::uint64_t>(lo, 2);
  if (hi < lo) return out;
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
  while (root * root > hi) --root;
  while ((root + 1) * (root + 1) <= hi) ++root;

  std::vector<char> small(root + 1, 1);
  std::vector<char> segment(hi - lo + 1, 1);
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
    std::uint64_t start = std::max(i * i, (lo + i - 1) / i * i);
    for (std::uint64_t j = start; j <= hi; j += i) segment[j - lo] = 0;
  }
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (segment[n - lo]) out.push_back(n);
  }
  return out;
}

void CrtAccumulator::add(std::uint64_t r, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("crt: modulus must be at least 2");
  if (r >= p) throw std::invalid_argument("crt: residue out of range");
  const std::uint64_t m_mod_p = mpz_fdiv_ui(m_.get_mpz_t(), p);
  const std::uint64_t m_inv = invmod(m_mod_p, p);
  if (m_inv == 0) {
    throw std::invalid_argument("crt: modulus " + std::to_string(p) +
                                " is not coprime to the running product");
  }
  const std::uint64_t x_mod_p = mpz_fdiv_ui(x_.get_mpz_t(), p);
  const std::uint64_t diff = r >= x_mod_p ? r - x_mod_p : r + p - x_mod_p;
  const std::uint64_t step = mulmod(diff, m_inv, p);
  x_ += m_ * BigInt(static_cast<unsigned long>(step));
  m_ *= BigInt(static_cast<unsigned long>(p));
}

std::pair<BigInt, BigInt> crt_combine(
    std::span<const std::pair<std::uint64_t, std::uint64_t>> residues) {
  CrtAccumulator acc;
  for (const auto& [r, p] : residues) acc.add(r, p);
  return {acc.value(), acc.modulus()};
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace sparsediv
