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

#include "sparsediv/blackbox.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "sparsediv/fft.hpp"

namespace sparsediv {

void ProbeCounter::record_probe(std::uint64_t p) {
  probes_.fetch_add(1, std::memory_order_relaxed);
  std::uint64_t prev = max_p_.load(std::memory_order_relaxed);
  while (prev < p && !max_p_.compare_exchange_weak(prev, p, std::memory_order_relaxed)) {
  }
}

ProbeStats ProbeCounter::snapshot() const {
  return ProbeStats{probes_.load(std::memory_order_relaxed), max_p_.load(std::memory_order_relaxed),
                    evals_.load(std::memory_order_relaxed)};
}

SparseFqBackend::SparseFqBackend(const PrimeField& field, SparsePoly<Fq> f)
    : FqBlackBox(field, nullptr), f_(std::move(f)) {
  exp_mod_order_.reserve(f_.sparsity());
  for (const auto& t : f_.terms()) {
    exp_mod_order_.push_back(mpz_fdiv_ui(t.exp.get_mpz_t(), field.modulus() - 1));
  }
}

DenseImage<Fq> SparseFqBackend::probe(std::uint64_t p, const Fq& alpha) const {
  if (p == 0) throw std::invalid_argument("probe: p must be positive");
  if (is_zero(alpha)) throw std::invalid_argument("probe: alpha must be nonzero");
  counter_->record_probe(p);
  const PrimeField& F = field();
  DenseImage<Fq> img(p);
  const auto& terms = f_.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::uint64_t j = mpz_fdiv_ui(terms[i].exp.get_mpz_t(), p);
    const Fq c = F.mul(terms[i].coeff, F.pow(alpha, exp_mod_order_[i]));
    img[j] = F.add(img[j], c);
  }
  return img;
}

SparseComplexBackend::SparseComplexBackend(SparsePoly<Complex> f)
    : ComplexBlackBox(nullptr), f_(std::move(f)) {}

DenseImage<Complex> SparseComplexBackend::probe(std::uint64_t p, const RootOfUnity& alpha) const {
  counter_->record_probe(p);
  return eval_mod_cyclic(f_, p, alpha);
}

DiversifiedFqBox::DiversifiedFqBox(const FqBlackBox& inner, Fq alpha)
    : FqBlackBox(inner.field(), inner.counter()), inner_(inner), alpha_(alpha) {
  if (is_zero(alpha)) throw std::invalid_argument("DiversifiedFqBox: alpha must be nonzero");
}

DenseImage<Fq> DiversifiedFqBox::probe(std::uint64_t p, const Fq& beta) const {
  return inner_.probe(p, field().mul(alpha_, beta));
}

DiversifiedComplexBox::DiversifiedComplexBox(const ComplexBlackBox& inner, RootOfUnity alpha)
    : ComplexBlackBox(inner.counter()), inner_(inner), alpha_(alpha) {}

DenseImage<Complex> DiversifiedComplexBox::probe(std::uint64_t p, const RootOfUnity& beta) const {
  return inner_.probe(p, alpha_ * beta);
}

DifferenceFqBox::DifferenceFqBox(const FqBlackBox& inner, SparsePoly<Fq> g)
    : FqBlackBox(inner.field(), inner.counter()), inner_(inner), g_(std::move(g)) {}

DenseImage<Fq> DifferenceFqBox::probe(std::uint64_t p, const Fq& alpha) const {
  DenseImage<Fq> img = inner_.probe(p, alpha);
  const DenseImage<Fq> sub = eval_mod_cyclic(field(), g_, p, alpha);
  for (std::uint64_t j = 0; j < p; ++j) img[j] = field().sub(img[j], sub[j]);
  return img;
}

EpsApproxBox::EpsApproxBox(SparsePoly<Complex> f, double eps, std::uint64_t seed)
    : ComplexBlackBox(nullptr), f_(std::move(f)), eps_(eps), seed_(seed) {
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("EpsApproxBox: need 0 <= eps < 1/2");
}

Complex EpsApproxBox::perturb(Complex exact, std::uint64_t num, std::uint64_t den) const {
  if (eps_ == 0.0) return exact;
  const std::uint64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  std::uint64_t state = mix64(seed_ ^ mix64(num ^ mix64(den)));
  const std::uint64_t a = mix64(state);
  const std::uint64_t b = mix64(a);
  constexpr double kUnit = 1.0 / 9007199254740992.0;  // 2^-53
  const double u_radius = static_cast<double>(a >> 11) * kUnit;
  const double u_angle = static_cast<double>(b >> 11) * kUnit;
  // sqrt gives a uniform distribution over the disk; u_radius < 1 keeps the
  // bound strict.
  const double radius = eps_ * std::abs(exact) * std::sqrt(u_radius);
  return exact + std::polar(radius, 2.0 * std::numbers::pi * u_angle);
}

Complex EpsApproxBox::evaluate(const RootOfUnity& xi) const {
  counter_->record_evals(1);
  Complex value{};
  for (const auto& t : f_.terms()) value += t.coeff * xi.pow(t.exp);
  return perturb(value, xi.index(), xi.order());
}

std::vector<Complex> EpsApproxBox::exact_circle(std::uint64_t p, const RootOfUnity& alpha) const {
  if (p == 0) throw std::invalid_argument("evaluate_circle: p must be positive");
  std::vector<Complex> table(p);
  for (std::uint64_t m = 0; m < p; ++m) table[m] = unit_circle(m, p);
  std::vector<Complex> values(p);
  // Term i contributes c_i alpha^{e_i} omega^{j r_i}, r_i = e_i mod p.
  for (const auto& t : f_.terms()) {
    const Complex c = t.coeff * alpha.pow(t.exp);
    const std::uint64_t r = mpz_fdiv_ui(t.exp.get_mpz_t(), p);
    std::uint64_t idx = 0;
    for (std::uint64_t j = 0; j < p; ++j) {
      values[j] += c * table[idx];
      idx += r;
      if (idx >= p) idx -= p;
    }
  }
  return values;
}

std::vector<Complex> EpsApproxBox::evaluate_circle(std::uint64_t p, const RootOfUnity& alpha) const {
  std::vector<Complex> values = exact_circle(p, alpha);
  counter_->record_evals(p);
  if (eps_ == 0.0) return values;
  // Point j is the turn (index p + j order) / (order p).
  const unsigned __int128 den = static_cast<unsigned __int128>(alpha.order()) * p;
  if (den > UINT64_MAX) throw std::overflow_error("evaluate_circle: point order overflows");
  for (std::uint64_t j = 0; j < p; ++j) {
    const unsigned __int128 num =
        (static_cast<unsigned __int128>(alpha.index()) * p + static_cast<unsigned __int128>(j) * alpha.order()) % den;
    values[j] = perturb(values[j], static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den));
  }
  return values;
}

DenseImage<Complex> EpsApproxBox::probe(std::uint64_t p, const RootOfUnity& alpha) const {
  counter_->record_probe(p);
  const std::vector<Complex> values = evaluate_circle(p, alpha);
  return DenseImage<Complex>(p, interpolate_from_roots(values));
}

}  // namespace sparsediv
