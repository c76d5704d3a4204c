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

#include "sparsediv/apinterp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "metered.hpp"

namespace sparsediv {

using detail::ceil_snapped;
using detail::MeteredComplexBox;

void ApproxConfig::validate() const {
  if (terms < 1) throw std::invalid_argument("ApproxConfig: need T >= 1");
  if (degree_bound < 2) throw std::invalid_argument("ApproxConfig: need D >= 2");
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("ApproxConfig: need 0 <= eps < 1/2");
  if (!(delta >= eps && delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("ApproxConfig: need eps <= delta <= 1 and delta > 0");
  }
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("ApproxConfig: need 0 < mu < 1");
  if (!(guard >= 1.0)) throw std::invalid_argument("ApproxConfig: need guard >= 1");
}

bool ApproxConfig::separable() const {
  if (terms < 2) return true;
  const double pairs = static_cast<double>(terms) * static_cast<double>(terms - 1);
  return eps < 1.5 * delta / pairs;
}

double approx_norm(const ComplexBlackBox& box, const ApproxConfig& cfg, Rng& rng) {
  const PrimeRange range(probe_lambda(cfg.terms, cfg.degree_bound));
  return norm2(box.probe(random_prime(range, rng), RootOfUnity{}));
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  return 0.5 * (*mid + *std::max_element(v.begin(), mid));
}

std::vector<std::size_t> support(const DenseImage<Complex>& img, double tau) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < img.modulus(); ++j) {
    if (std::abs(img[j]) > tau) out.push_back(j);
  }
  return out;
}

ApproxResult failed(std::string reason) {
  ApproxResult r;
  r.status = InterpStatus::failed;
  r.reason = std::move(reason);
  return r;
}

// Per-key CRT of residues, accepting an image only if its terms map
// one-to-one onto the key with no ambiguity.
class ApproxMatcher {
 public:
  ApproxMatcher(std::vector<Complex> key, double radius) : key_(std::move(key)), radius_(radius), acc_(key_.size()) {}

  bool add_image(const DenseImage<Complex>& img, double tau) {
    const std::uint64_t p = img.modulus();
    if (std::find(used_.begin(), used_.end(), p) != used_.end()) return false;
    const std::vector<std::size_t> supp = support(img, tau);
    if (supp.size() != key_.size()) return false;
    std::vector<std::uint64_t> residue(key_.size(), std::numeric_limits<std::uint64_t>::max());
    for (std::size_t j : supp) {
      std::size_t best = key_.size();
      for (std::size_t i = 0; i < key_.size(); ++i) {
        if (std::abs(img[j] - key_[i]) > radius_) continue;
        if (best != key_.size()) return false;  // two keys in range
        best = i;
      }
      if (best == key_.size() || residue[best] != std::numeric_limits<std::uint64_t>::max()) return false;
      residue[best] = j;
    }
    for (std::size_t i = 0; i < key_.size(); ++i) acc_[i].add(residue[i], p);
    used_.push_back(p);
    return true;
  }

  BigInt modulus() const { return acc_.empty() ? BigInt(1) : acc_.front().modulus(); }
  const std::vector<CrtAccumulator>& residues() const { return acc_; }

 private:
  std::vector<Complex> key_;
  double radius_;
  std::vector<CrtAccumulator> acc_;
  std::vector<std::uint64_t> used_;
};

}  // namespace

double approx_norm_median(const ComplexBlackBox& box, const ApproxConfig& cfg, Rng& rng,
                          std::uint64_t draws) {
  std::vector<double> v;
  for (std::uint64_t i = 0; i < draws; ++i) v.push_back(approx_norm(box, cfg, rng));
  return median(std::move(v));
}

DenseImage<Complex> approx_remainder(const EpsApproxBox& box, std::uint64_t p,
                                     const RootOfUnity& alpha) {
  if (p < 2) throw std::invalid_argument("approx_remainder: need p >= 2");
  return box.probe(p, alpha);
}

double separation_floor(const DenseImage<Complex>& img, double sigma, double tau, double sep) {
  std::vector<Complex> big;
  for (const Complex& c : img.coeffs()) {
    if (std::abs(c) > tau) big.push_back(c);
  }
  std::sort(big.begin(), big.end(),
            [](const Complex& a, const Complex& b) { return std::abs(a) > std::abs(b); });
  for (std::size_t i = 1; i < big.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(big[i] - big[j]) < sep) {
        return sigma > 0.0 ? std::abs(big[i]) / sigma : std::numeric_limits<double>::infinity();
      }
    }
  }
  return 0.0;
}

ApproxDiversification diversify_approx(const ComplexBlackBox& box, std::uint64_t p,
                                       std::uint64_t t, double sigma, const ApproxConfig& cfg,
                                       Rng& rng) {
  const double tau = 0.5 * cfg.delta * sigma;
  const double sep = 5.0 * cfg.eps_eff() * sigma;
  const std::uint64_t draws = sparsity_probe_budget(cfg.mu);
  const double limit = cfg.guard * static_cast<double>(t) * static_cast<double>(t);

  ApproxDiversification out;
  for (std::uint64_t s = 2;; s = primes_from(2 * s, 1).front()) {
    out.last_order = s;
    for (std::uint64_t i = 0; i < draws; ++i) {
      const RootOfUnity alpha(s, std::uniform_int_distribution<std::uint64_t>(0, s - 1)(rng));
      DenseImage<Complex> img = box.probe(p, alpha);
      ++out.attempts;
      out.delta_hat = separation_floor(img, sigma, tau, sep);
      if (sparsity(img, tau) == t && is_diverse(img, 5.0 * cfg.eps_eff(), sigma, tau)) {
        out.alpha = alpha;
        out.image = std::move(img);
        return out;
      }
    }
    if (static_cast<double>(s) > limit) return out;
  }
}

ApproxResult approx_interpolate(const ComplexBlackBox& box, const ApproxConfig& cfg, Rng& rng) {
  cfg.validate();
  if (!cfg.separable()) {
    throw std::invalid_argument("approx_interpolate: need eps < 1.5 delta / (T (T - 1))");
  }
  MeteredComplexBox meter(box);
  auto done = [&meter](ApproxResult r) {
    r.stats = meter.stats();
    return r;
  };

  // Norm and sparsity share the same probes.
  const std::uint64_t lambda = probe_lambda(cfg.terms, cfg.degree_bound);
  const PrimeRange range(lambda);
  const std::uint64_t draws = sparsity_probe_budget(cfg.mu);
  std::vector<DenseImage<Complex>> images;
  std::vector<double> norms;
  for (std::uint64_t i = 0; i < draws; ++i) {
    images.push_back(meter.probe(random_prime(range, rng), RootOfUnity{}));
    norms.push_back(norm2(images.back()));
  }
  const double sigma = median(norms);
  if (sigma == 0.0) return done(ApproxResult{});

  const double tau = 0.5 * cfg.delta * sigma;
  std::uint64_t t = 0;
  std::uint64_t rho = 0;
  for (const auto& img : images) {
    const std::uint64_t s = sparsity(img, tau);
    if (s > t) {
      t = s;
      rho = img.modulus();
    }
  }
  if (t == 0) {
    ApproxResult r;
    r.sigma = sigma;
    return done(std::move(r));
  }

  const ApproxDiversification div = diversify_approx(meter, rho, t, sigma, cfg, rng);
  if (!div.alpha) {
    ApproxResult r = failed("not-diversifiable");
    r.sigma = sigma;
    r.delta_hat = div.delta_hat;
    r.diversify_attempts = div.attempts;
    return done(std::move(r));
  }

  std::vector<Complex> key;
  for (std::size_t j : support(*div.image, tau)) key.push_back((*div.image)[j]);
  ApproxMatcher matcher(key, 2.5 * cfg.eps_eff() * sigma);

  PrimeSampler sampler(range);
  const std::uint64_t budget = exponent_probe_budget(cfg.mu, cfg.degree_bound, lambda);
  for (std::uint64_t i = 0; i < budget; ++i) {
    matcher.add_image(meter.probe(sampler.next(rng), *div.alpha), tau);
  }

  ApproxResult r;
  r.sigma = sigma;
  r.alpha = div.alpha;
  r.delta_hat = div.delta_hat;
  r.diversify_attempts = div.attempts;
  if (matcher.modulus() < cfg.degree_bound) {
    ApproxResult f = failed("insufficient-good-primes");
    f.sigma = sigma;
    f.alpha = div.alpha;
    f.diversify_attempts = div.attempts;
    return done(std::move(f));
  }

  std::vector<Term<Complex>> terms;
  for (std::size_t i = 0; i < key.size(); ++i) {
    const BigInt& e = matcher.residues()[i].value();
    if (e >= cfg.degree_bound) return done(failed("bad-exponents"));
    terms.push_back({key[i] * std::conj(div.alpha->pow(e)), e});
  }
  try {
    r.poly = SparsePoly<Complex>(std::move(terms));
  } catch (const std::invalid_argument&) {
    return done(failed("bad-exponents"));
  }
  return done(std::move(r));
}

double suggest_delta(const ComplexBlackBox& box, const ApproxConfig& cfg, Rng& rng) {
  const PrimeRange range(probe_lambda(cfg.terms, cfg.degree_bound));
  const DenseImage<Complex> img = box.probe(random_prime(range, rng), RootOfUnity{});
  const double sigma = norm2(img);
  if (sigma == 0.0) return 1.0;
  const double floor = 4.0 * cfg.eps_eff() * sigma;
  double smallest = sigma;
  for (const Complex& c : img.coeffs()) {
    const double m = std::abs(c);
    if (m > floor) smallest = std::min(smallest, m);
  }
  return smallest / sigma;
}

}  // namespace sparsediv
