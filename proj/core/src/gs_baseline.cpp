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

// Baseline interpolation through the symmetric polynomial of the exponents,
// plus the small univariate toolkit it needs (root finding modulo a prime).

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "metered.hpp"
#include "sparsediv/ffinterp.hpp"

namespace sparsediv {

namespace {

// Arithmetic modulo a word-sized prime.
struct WordMod {
  PrimeField F;
  using E = Fq;

  E zero() const { return F.zero(); }
  E one() const { return F.one(); }
  bool is_zero(E a) const { return a.v == 0; }
  E add(E a, E b) const { return F.add(a, b); }
  E sub(E a, E b) const { return F.sub(a, b); }
  E mul(E a, E b) const { return F.mul(a, b); }
  E inv(E a) const { return F.inv(a); }
  E from_big(const BigInt& a) const { return F.from_big(a); }
  BigInt to_big(E a) const { return BigInt(static_cast<unsigned long>(a.v)); }
  BigInt modulus() const { return BigInt(static_cast<unsigned long>(F.modulus())); }
  E random(Rng& rng) const { return F.random(rng); }
};

// Arithmetic modulo an arbitrary-size prime.
struct BigMod {
  BigInt P;
  using E = BigInt;

  E zero() const { return 0; }
  E one() const { return 1; }
  bool is_zero(const E& a) const { return a == 0; }
  E add(const E& a, const E& b) const {
    E s = a + b;
    if (s >= P) s -= P;
    return s;
  }
  E sub(const E& a, const E& b) const {
    E s = a - b;
    if (s < 0) s += P;
    return s;
  }
  E mul(const E& a, const E& b) const {
    E r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), P.get_mpz_t());
    return r;
  }
  E inv(const E& a) const {
    E r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), P.get_mpz_t()) == 0) {
      throw std::domain_error("BigMod::inv: not invertible");
    }
    return r;
  }
  E from_big(const BigInt& a) const {
    E r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), P.get_mpz_t());
    return r;
  }
  BigInt to_big(const E& a) const { return a; }
  BigInt modulus() const { return P; }
  E random(Rng& rng) const { return uniform_below(P, rng); }
};

// Dense polynomials over Z/P, low to high, no trailing zeros.
template <class R>
class ModPolyOps {
 public:
  using E = typename R::E;
  using Poly = std::vector<E>;

  explicit ModPolyOps(R ring) : r_(std::move(ring)) {}
  const R& ring() const { return r_; }

  void trim(Poly& a) const {
    while (!a.empty() && r_.is_zero(a.back())) a.pop_back();
  }

  // Quotient and remainder by nonzero b.
  std::pair<Poly, Poly> divmod(Poly a, const Poly& b) const {
    trim(a);
    if (b.empty()) throw std::domain_error("ModPolyOps: division by zero polynomial");
    if (a.size() < b.size()) return {Poly{}, a};
    const E lead_inv = r_.inv(b.back());
    Poly q(a.size() - b.size() + 1, r_.zero());
    for (std::size_t k = a.size(); k-- >= b.size();) {
      const E c = r_.mul(a[k], lead_inv);
      const std::size_t shift = k - (b.size() - 1);
      q[shift] = c;
      if (!r_.is_zero(c)) {
        for (std::size_t i = 0; i < b.size(); ++i) {
          a[shift + i] = r_.sub(a[shift + i], r_.mul(c, b[i]));
        }
      }
      if (k == b.size() - 1) break;
    }
    a.resize(b.size() - 1);
    trim(a);
    trim(q);
    return {q, a};
  }

  Poly mod(const Poly& a, const Poly& g) const { return divmod(a, g).second; }

  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, r_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (r_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = r_.add(out[i + j], r_.mul(a[i], b[j]));
    }
    trim(out);
    return out;
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& g) const { return mod(mul(a, b), g); }

  Poly powmod(const Poly& base, const BigInt& e, const Poly& g) const {
    Poly result = mod(Poly{r_.one()}, g);
    Poly b = mod(base, g);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      result = mulmod(result, result, g);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, g);
    }
    return result;
  }

  Poly sub(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), r_.zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = r_.sub(a[i], b[i]);
    trim(a);
    return a;
  }

  Poly monic(Poly a) const {
    trim(a);
    if (a.empty()) return a;
    const E inv = r_.inv(a.back());
    for (E& c : a) c = r_.mul(c, inv);
    return a;
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly rem = mod(a, b);
      a = std::move(b);
      b = std::move(rem);
    }
    return monic(std::move(a));
  }

  // Roots of g in Z/P; g need not split.
  std::vector<E> roots(const Poly& g, Rng& rng) const {
    Poly f = monic(g);
    std::vector<E> out;
    if (f.size() <= 1) return out;
    // Product of the distinct linear factors: gcd(f, y^P - y).
    const Poly y{r_.zero(), r_.one()};
    Poly linear = gcd(f, sub(powmod(y, r_.modulus(), f), y));
    split(linear, rng, out);
    return out;
  }

 private:
  void split(const Poly& h, Rng& rng, std::vector<E>& out) const {
    if (h.size() <= 1) return;
    if (h.size() == 2) {
      out.push_back(r_.sub(r_.zero(), h[0]));
      return;
    }
    BigInt half = (r_.modulus() - 1) / 2;
    for (int attempt = 0; attempt < 256; ++attempt) {
      const Poly shifted{r_.random(rng), r_.one()};
      Poly w = sub(powmod(shifted, half, h), Poly{r_.one()});
      Poly d = gcd(h, w);
      if (d.size() > 1 && d.size() < h.size()) {
        split(d, rng, out);
        split(divmod(h, d).first, rng, out);
        return;
      }
    }
    throw std::runtime_error("root splitting did not converge");
  }

  R r_;
};

template <class R>
std::vector<BigInt> roots_below(const R& ring, std::span<const BigInt> coeffs, const BigInt& bound,
                                Rng& rng) {
  ModPolyOps<R> ops(ring);
  std::vector<typename R::E> g;
  g.reserve(coeffs.size());
  for (const BigInt& c : coeffs) g.push_back(ring.from_big(c));
  std::vector<BigInt> out;
  for (const auto& r : ops.roots(g, rng)) {
    BigInt v = ring.to_big(r);
    if (v < bound) out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<BigInt> symmetric_poly(std::span<const BigInt> roots) {
  std::vector<BigInt> c{1};
  for (const BigInt& r : roots) {
    c.push_back(0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return c;
}

std::vector<BigInt> integer_roots(std::span<const BigInt> coeffs, const BigInt& bound, Rng& rng) {
  if (coeffs.empty() || coeffs.back() != 1) {
    throw std::invalid_argument("integer_roots: polynomial must be monic");
  }
  BigInt P;
  mpz_nextprime(P.get_mpz_t(), BigInt(std::max(bound, BigInt(2))).get_mpz_t());
  std::vector<BigInt> cand = P < (BigInt(1) << 63)
                                 ? roots_below(WordMod{PrimeField(P.get_ui())}, coeffs, bound, rng)
                                 : roots_below(BigMod{P}, coeffs, bound, rng);
  // A root mod P below the bound may be the image of a larger integer root.
  std::erase_if(cand, [&coeffs](const BigInt& r) {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + *it;
    return acc != 0;
  });
  return cand;
}

InterpResult gs_interpolate_mc(const FqBlackBox& box, const InterpConfig& cfg, Rng& rng) {
  cfg.validate();
  if (cfg.check_field) require_large_field(box.field(), cfg.terms, cfg.degree_bound);
  detail::MeteredFqBox meter(box);
  const PrimeField& F = box.field();

  auto done = [&meter](InterpResult r) {
    r.stats = meter.stats();
    return r;
  };
  auto failed = [&done](const char* reason) {
    InterpResult r;
    r.status = InterpStatus::failed;
    r.reason = reason;
    return done(std::move(r));
  };

  const SparsityEstimate est = find_sparsity(meter, cfg, rng);
  const std::uint64_t t = est.t;
  if (t == 0) return done(InterpResult{});

  // |coefficients of prod (y - e_i)| <= prod (1 + e_i) <= D^t; symmetric
  // residues need a modulus above twice that.
  BigInt bound;
  mpz_pow_ui(bound.get_mpz_t(), cfg.degree_bound.get_mpz_t(), t);
  bound *= 2;

  const std::uint64_t lambda = probe_lambda(cfg.terms, cfg.degree_bound);
  PrimeSampler sampler{PrimeRange(lambda)};
  const std::uint64_t budget = detail::ceil_snapped(
      2.0 * std::log(3.0 / cfg.mu) + 4.0 * ln(bound) / std::log(static_cast<double>(lambda)));

  std::vector<CrtAccumulator> acc(t);
  std::vector<std::uint64_t> used;
  std::optional<DenseImage<Fq>> witness;
  for (std::uint64_t i = 0; i < budget; ++i) {
    const std::uint64_t p = sampler.next(rng);
    DenseImage<Fq> img = meter.probe(p, F.one());
    if (sparsity(img) != t || std::find(used.begin(), used.end(), p) != used.end()) continue;

    // prod (y - r_j) mod p over the support residues r_j.
    const PrimeField Fp(p);
    std::vector<Fq> sym{Fp.one()};
    for (std::uint64_t j = 0; j < p; ++j) {
      if (is_zero(img[j])) continue;
      const Fq r = Fp.from_uint(j);
      sym.push_back(Fp.zero());
      for (std::size_t k = sym.size() - 1; k > 0; --k) sym[k] = Fp.sub(sym[k - 1], Fp.mul(r, sym[k]));
      sym[0] = Fp.neg(Fp.mul(r, sym[0]));
    }
    for (std::size_t k = 0; k < t; ++k) acc[k].add(sym[k].v, p);
    used.push_back(p);
    if (!witness) witness = std::move(img);
  }
  if (!witness || acc.front().modulus() <= bound) return failed("insufficient-good-primes");

  const BigInt& m = acc.front().modulus();
  const BigInt half = m / 2;
  std::vector<BigInt> coeffs;
  coeffs.reserve(t + 1);
  for (const auto& a : acc) coeffs.push_back(a.value() > half ? BigInt(a.value() - m) : a.value());
  coeffs.push_back(1);

  const std::vector<BigInt> exps = integer_roots(coeffs, cfg.degree_bound, rng);
  if (exps.size() != t) return failed("root-finding");

  std::vector<Term<Fq>> terms;
  for (const BigInt& e : exps) {
    const Fq c = (*witness)[mpz_fdiv_ui(e.get_mpz_t(), witness->modulus())];
    if (is_zero(c)) return failed("root-finding");
    terms.push_back({c, e});
  }
  InterpResult r;
  r.poly = SparsePoly<Fq>(std::move(terms));
  return done(std::move(r));
}

}  // namespace sparsediv
