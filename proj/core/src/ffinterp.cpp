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

#include "sparsediv/ffinterp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "metered.hpp"

namespace sparsediv {

using detail::ceil_snapped;
using detail::MeteredFqBox;

void InterpConfig::validate() const {
  if (terms < 1) throw std::invalid_argument("InterpConfig: T must be at least 1");
  if (degree_bound < 2) throw std::invalid_argument("InterpConfig: D must be at least 2");
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("InterpConfig: need 0 < mu < 1");
}

std::uint64_t sparsity_probe_budget(double mu) { return ceil_snapped(std::log2(3.0 / mu)); }

std::uint64_t exponent_probe_budget(double mu, const BigInt& degree_bound, std::uint64_t lambda) {
  return ceil_snapped(2.0 * std::log(3.0 / mu) +
                      4.0 * ln(degree_bound) / std::log(static_cast<double>(lambda)));
}

std::uint64_t verify_probe_budget(std::uint64_t terms, const BigInt& degree_bound) {
  if (terms <= 1) return 1;
  const std::uint64_t n = ceil_snapped(static_cast<double>(terms - 1) * log2(degree_bound));
  return std::max<std::uint64_t>(1, n);
}

void require_large_field(const PrimeField& field, std::uint64_t terms, const BigInt& degree_bound) {
  BigInt need = BigInt(static_cast<unsigned long>(terms)) *
                    BigInt(static_cast<unsigned long>(terms - 1)) * degree_bound +
                1;
  if (BigInt(static_cast<unsigned long>(field.modulus())) < need) {
    throw std::invalid_argument("field too small: need q >= T(T-1)D + 1 = " + need.get_str());
  }
}

SparsityEstimate find_sparsity(const FqBlackBox& box, const InterpConfig& cfg, Rng& rng) {
  const PrimeRange range(probe_lambda(cfg.terms, cfg.degree_bound));
  PrimeSampler sampler(range);
  SparsityEstimate est;
  const std::uint64_t budget = sparsity_probe_budget(cfg.mu);
  for (std::uint64_t i = 0; i < budget; ++i) {
    const std::uint64_t p = sampler.next(rng);
    const std::size_t t = sparsity(box.probe(p, box.field().one()));
    if (t > est.t) {
      est.t = t;
      est.rho = p;
    }
  }
  if (est.rho == 0) est.rho = range.lo();
  return est;
}

std::optional<DenseImage<Fq>> try_diversifier(const FqBlackBox& box, std::uint64_t t,
                                              std::uint64_t rho, Fq alpha) {
  DenseImage<Fq> img = box.probe(rho, alpha);
  if (sparsity(img) != t || !is_diverse(img)) return std::nullopt;
  return img;
}

Diversification diversify_ff(const FqBlackBox& box, std::uint64_t t, std::uint64_t rho, double mu,
                             Rng& rng) {
  Diversification out;
  const std::uint64_t budget = sparsity_probe_budget(mu);
  while (out.attempts < budget) {
    const Fq alpha = box.field().random_nonzero(rng);
    ++out.attempts;
    if (auto img = try_diversifier(box, t, rho, alpha)) {
      out.alpha = alpha;
      out.image = std::move(img);
      break;
    }
  }
  return out;
}

ExponentMatcher::ExponentMatcher(std::vector<Fq> key) : key_(std::move(key)), acc_(key_.size()) {
  for (std::size_t i = 0; i < key_.size(); ++i) {
    if (is_zero(key_[i])) throw std::invalid_argument("ExponentMatcher: zero key coefficient");
    if (!slot_.emplace(key_[i], i).second) {
      throw std::invalid_argument("ExponentMatcher: key coefficients must be distinct");
    }
  }
}

bool ExponentMatcher::add_image(const DenseImage<Fq>& img) {
  const std::uint64_t p = img.modulus();
  if (std::find(used_moduli_.begin(), used_moduli_.end(), p) != used_moduli_.end()) return false;
  if (sparsity(img) != key_.size()) return false;

  std::vector<std::uint64_t> residue(key_.size(), UINT64_MAX);
  for (std::uint64_t j = 0; j < p; ++j) {
    if (is_zero(img[j])) continue;
    auto it = slot_.find(img[j]);
    if (it == slot_.end() || residue[it->second] != UINT64_MAX) return false;
    residue[it->second] = j;
  }
  for (std::size_t i = 0; i < key_.size(); ++i) acc_[i].add(residue[i], p);
  used_moduli_.push_back(p);
  return true;
}

const BigInt& ExponentMatcher::modulus() const {
  return acc_.empty() ? one_ : acc_.front().modulus();
}

std::vector<BigInt> ExponentMatcher::exponents() const {
  std::vector<BigInt> out;
  out.reserve(acc_.size());
  for (const auto& a : acc_) out.push_back(a.value());
  return out;
}

ExponentRecovery recover_exponents(const FqBlackBox& diversified, const std::vector<Fq>& key,
                                   const InterpConfig& cfg, Rng& rng) {
  const std::uint64_t lambda = probe_lambda(cfg.terms, cfg.degree_bound);
  PrimeSampler sampler{PrimeRange(lambda)};
  ExponentMatcher matcher(key);
  ExponentRecovery out;
  const std::uint64_t budget = exponent_probe_budget(cfg.mu, cfg.degree_bound, lambda);
  for (std::uint64_t i = 0; i < budget; ++i) {
    const std::uint64_t p = sampler.next(rng);
    ++out.probes;
    if (matcher.add_image(diversified.probe(p, diversified.field().one()))) ++out.good_images;
  }
  out.modulus = matcher.modulus();
  out.exponents = matcher.exponents();
  out.ok = out.modulus >= cfg.degree_bound;
  return out;
}

namespace {

InterpResult failed(std::string reason) {
  InterpResult r;
  r.status = InterpStatus::failed;
  r.reason = std::move(reason);
  return r;
}

std::vector<Fq> nonzero_coeffs(const DenseImage<Fq>& img) {
  std::vector<Fq> out;
  for (Fq c : img.coeffs()) {
    if (!is_zero(c)) out.push_back(c);
  }
  return out;
}

// c_i <- c_i alpha^{-e_i}; fails on out-of-range or repeated exponents.
InterpResult undiversify(const PrimeField& F, const std::vector<Fq>& key,
                         const std::vector<BigInt>& exps, Fq alpha, const BigInt& degree_bound) {
  const Fq alpha_inv = F.inv(alpha);
  std::vector<Term<Fq>> terms;
  terms.reserve(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (exps[i] >= degree_bound) return failed("bad-exponents");
    terms.push_back({F.mul(key[i], F.pow(alpha_inv, exps[i])), exps[i]});
  }
  InterpResult r;
  try {
    r.poly = SparsePoly<Fq>(std::move(terms));
  } catch (const std::invalid_argument&) {
    return failed("bad-exponents");
  }
  return r;
}

InterpResult finish(InterpResult r, const MeteredFqBox& meter) {
  r.stats = meter.stats();
  return r;
}

}  // namespace

InterpResult interpolate_mc(const FqBlackBox& box, const InterpConfig& cfg, Rng& rng) {
  cfg.validate();
  if (cfg.check_field) require_large_field(box.field(), cfg.terms, cfg.degree_bound);
  MeteredFqBox meter(box);

  const SparsityEstimate est = find_sparsity(meter, cfg, rng);
  if (est.t == 0) return finish(InterpResult{}, meter);

  const Diversification div = diversify_ff(meter, est.t, est.rho, cfg.mu, rng);
  if (!div.alpha) {
    InterpResult r = failed("not-diversified");
    r.diversify_attempts = div.attempts;
    return finish(std::move(r), meter);
  }

  const std::vector<Fq> key = nonzero_coeffs(*div.image);
  const DiversifiedFqBox diversified(meter, *div.alpha);
  const ExponentRecovery rec = recover_exponents(diversified, key, cfg, rng);

  InterpResult r = rec.ok ? undiversify(box.field(), key, rec.exponents, *div.alpha, cfg.degree_bound)
                          : failed("insufficient-good-primes");
  r.diversify_attempts = div.attempts;
  return finish(std::move(r), meter);
}

VerifyResult verify_zero(const FqBlackBox& box, std::uint64_t terms, const BigInt& degree_bound) {
  VerifyResult out;
  const std::uint64_t budget = verify_probe_budget(terms, degree_bound);
  PrimeStream primes(2);
  for (std::uint64_t i = 0; i < budget; ++i) {
    const std::uint64_t p = primes.next();
    ++out.probes;
    if (sparsity(box.probe(p, box.field().one())) != 0) {
      out.verdict = ZeroTest::nonzero;
      out.witness = p;
      return out;
    }
  }
  return out;
}

InterpResult interpolate_lv(const FqBlackBox& box, const InterpConfig& cfg, Rng& rng,
                            std::uint64_t max_iterations) {
  cfg.validate();
  if (cfg.check_field) require_large_field(box.field(), cfg.terms, cfg.degree_bound);
  MeteredFqBox meter(box);
  InterpConfig round = cfg;
  round.mu = 0.5;

  for (std::uint64_t iter = 1;; ++iter) {
    InterpResult r = interpolate_mc(meter, round, rng);
    if (r.ok()) {
      const DifferenceFqBox diff(meter, r.poly);
      if (verify_zero(diff, 2 * cfg.terms, cfg.degree_bound).verdict == ZeroTest::zero) {
        r.iterations = iter;
        return finish(std::move(r), meter);
      }
    }
    if (max_iterations != 0 && iter >= max_iterations) {
      InterpResult f = failed("iteration-cap");
      f.iterations = iter;
      return finish(std::move(f), meter);
    }
  }
}

InterpResult interpolate_adaptive(const FqBlackBox& box, const InterpConfig& cfg, Rng& rng) {
  cfg.validate();
  if (cfg.check_field) require_large_field(box.field(), cfg.terms, cfg.degree_bound);
  MeteredFqBox meter(box);
  const PrimeField& F = box.field();

  const PrimeRange range(probe_lambda(cfg.terms, cfg.degree_bound));
  const std::uint64_t rho = random_prime(range, rng);
  const std::uint64_t t = sparsity(meter.probe(rho, F.one()));
  if (t == 0) return finish(InterpResult{}, meter);

  const Diversification div = diversify_ff(meter, t, rho, cfg.mu, rng);
  if (!div.alpha) {
    InterpResult r = failed("not-diversified");
    r.diversify_attempts = div.attempts;
    return finish(std::move(r), meter);
  }
  const std::vector<Fq> key = nonzero_coeffs(*div.image);
  const DiversifiedFqBox diversified(meter, *div.alpha);
  ExponentMatcher matcher(key);

  // Birthday bound: below ~t^2 most primes collide somewhere.
  const double log_t = std::log(static_cast<double>(std::max<std::uint64_t>(t, 2)));
  const std::uint64_t cap = ceil_snapped(4.0 * ln(cfg.degree_bound) / log_t) + 64;
  PrimeStream primes(std::max<std::uint64_t>(2, t * t));
  std::uint64_t tried = 0;
  std::uint64_t search_max = 0;
  while (matcher.modulus() < cfg.degree_bound) {
    if (tried >= cap) {
      InterpResult r = failed("insufficient-good-primes");
      r.diversify_attempts = div.attempts;
      r.search_max_p = search_max;
      return finish(std::move(r), meter);
    }
    const std::uint64_t p = primes.next();
    ++tried;
    search_max = p;
    matcher.add_image(diversified.probe(p, F.one()));
  }

  InterpResult r = undiversify(F, key, matcher.exponents(), *div.alpha, cfg.degree_bound);
  r.diversify_attempts = div.attempts;
  r.search_max_p = search_max;
  return finish(std::move(r), meter);
}

}  // namespace sparsediv
