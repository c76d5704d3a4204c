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

#include "sparsediv/poly.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace sparsediv {

namespace {

using u128 = unsigned __int128;

template <class C, class Sub>
SparsePoly<C> merge_sub(const SparsePoly<C>& f, const SparsePoly<C>& g, Sub sub) {
  const auto& a = f.terms();
  const auto& b = g.terms();
  std::vector<Term<C>> out;
  out.reserve(a.size() + b.size());
  const C zero{};
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exp < b[j].exp)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exp < a[i].exp) {
      out.push_back({sub(zero, b[j].coeff), b[j].exp});
      ++j;
    } else {
      C c = sub(a[i].coeff, b[j].coeff);
      if (!is_zero(c)) out.push_back({c, a[i].exp});
      ++i;
      ++j;
    }
  }
  return SparsePoly<C>(std::move(out));
}

}  // namespace

Complex unit_circle(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t r = num % den;
  // Symmetric representative keeps the angle in [-pi, pi].
  const double signed_r = 2 * r > den ? -static_cast<double>(den - r) : static_cast<double>(r);
  const double angle = 2.0 * std::numbers::pi * signed_r / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

RootOfUnity::RootOfUnity(std::uint64_t order, std::uint64_t index)
    : order_(order), index_(0) {
  if (order == 0) throw std::invalid_argument("RootOfUnity: order must be positive");
  index_ = index % order;
}

std::uint64_t RootOfUnity::phase_index(const BigInt& e) const {
  const std::uint64_t e_mod = mpz_fdiv_ui(e.get_mpz_t(), order_);
  return static_cast<std::uint64_t>(static_cast<u128>(index_) * e_mod % order_);
}

RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
  const std::uint64_t g = std::gcd(a.order_, b.order_);
  const u128 l = static_cast<u128>(a.order_ / g) * b.order_;
  if (l > UINT64_MAX) throw std::overflow_error("RootOfUnity: combined order overflows");
  const std::uint64_t order = static_cast<std::uint64_t>(l);
  const u128 num = static_cast<u128>(a.index_) * (order / a.order_) +
                   static_cast<u128>(b.index_) * (order / b.order_);
  const std::uint64_t index = static_cast<std::uint64_t>(num % order);
  const std::uint64_t common = std::gcd(index, order);
  return RootOfUnity(order / common, index / common);
}

bool operator==(const RootOfUnity& a, const RootOfUnity& b) {
  return static_cast<u128>(a.index_) * b.order_ == static_cast<u128>(b.index_) * a.order_;
}

DenseImage<Fq> eval_mod_cyclic(const PrimeField& field, const SparsePoly<Fq>& f,
                               std::uint64_t p, Fq alpha) {
  if (p == 0) throw std::invalid_argument("eval_mod_cyclic: p must be positive");
  if (is_zero(alpha)) throw std::invalid_argument("eval_mod_cyclic: alpha must be nonzero");
  DenseImage<Fq> img(p);
  const bool identity = alpha == field.one();
  for (const auto& t : f.terms()) {
    const std::uint64_t j = mpz_fdiv_ui(t.exp.get_mpz_t(), p);
    const Fq c = identity ? t.coeff : field.mul(t.coeff, field.pow(alpha, t.exp));
    img[j] = field.add(img[j], c);
  }
  return img;
}

DenseImage<Complex> eval_mod_cyclic(const SparsePoly<Complex>& f, std::uint64_t p,
                                    const RootOfUnity& alpha) {
  if (p == 0) throw std::invalid_argument("eval_mod_cyclic: p must be positive");
  DenseImage<Complex> img(p);
  for (const auto& t : f.terms()) {
    const std::uint64_t j = mpz_fdiv_ui(t.exp.get_mpz_t(), p);
    img[j] += t.coeff * alpha.pow(t.exp);
  }
  return img;
}

std::size_t sparsity(const DenseImage<Fq>& img) {
  return static_cast<std::size_t>(
      std::count_if(img.coeffs().begin(), img.coeffs().end(), [](Fq c) { return !is_zero(c); }));
}

std::size_t sparsity(const DenseImage<Complex>& img, double tau) {
  return static_cast<std::size_t>(std::count_if(img.coeffs().begin(), img.coeffs().end(),
                                                [tau](const Complex& c) { return std::abs(c) > tau; }));
}

bool is_diverse(const DenseImage<Fq>& img) {
  std::unordered_set<Fq> seen;
  for (Fq c : img.coeffs()) {
    if (!is_zero(c) && !seen.insert(c).second) return false;
  }
  return true;
}

bool is_diverse(const DenseImage<Complex>& img, double eps_sep, double sigma, double tau) {
  std::vector<Complex> big;
  for (const Complex& c : img.coeffs()) {
    if (std::abs(c) > tau) big.push_back(c);
  }
  const double sep = eps_sep * sigma;
  std::sort(big.begin(), big.end(),
            [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
  // Sweep in real part: only pairs with |dRe| < sep can be too close.
  for (std::size_t i = 0; i < big.size(); ++i) {
    for (std::size_t j = i + 1; j < big.size(); ++j) {
      if (sep > 0 && big[j].real() - big[i].real() >= sep) break;
      if (sep > 0 ? std::abs(big[j] - big[i]) < sep : big[j] == big[i]) return false;
      if (sep == 0 && big[j].real() != big[i].real()) break;
    }
  }
  return true;
}

double norm2(const SparsePoly<Complex>& f) {
  double s = 0;
  for (const auto& t : f.terms()) s += std::norm(t.coeff);
  return std::sqrt(s);
}

double norm2(const DenseImage<Complex>& img) {
  double s = 0;
  for (const Complex& c : img.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

SparsePoly<Fq> poly_sub(const PrimeField& field, const SparsePoly<Fq>& f,
                        const SparsePoly<Fq>& g) {
  return merge_sub(f, g, [&field](Fq a, Fq b) { return field.sub(a, b); });
}

SparsePoly<Complex> poly_sub(const SparsePoly<Complex>& f, const SparsePoly<Complex>& g) {
  return merge_sub(f, g, [](const Complex& a, const Complex& b) { return a - b; });
}

}  // namespace sparsediv
