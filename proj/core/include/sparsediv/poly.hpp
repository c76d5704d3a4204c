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

#include <algorithm>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sparsediv/numt.hpp"

namespace sparsediv {

using Complex = std::complex<double>;

inline bool is_zero(const Complex& c) { return c == Complex{}; }

template <class C>
struct Term {
  C coeff;
  BigInt exp;

  friend bool operator==(const Term& a, const Term& b) {
    return a.coeff == b.coeff && a.exp == b.exp;
  }
};

/// f = sum c_i x^{e_i} with nonzero c_i and strictly increasing e_i.
template <class C>
class SparsePoly {
 public:
  SparsePoly() = default;

  /// Sorts by exponent and drops zero coefficients. Throws
  /// std::invalid_argument on a negative or repeated exponent.
  explicit SparsePoly(std::vector<Term<C>> terms) : terms_(std::move(terms)) {
    std::erase_if(terms_, [](const Term<C>& t) { return sparsediv::is_zero(t.coeff); });
    std::sort(terms_.begin(), terms_.end(),
              [](const Term<C>& a, const Term<C>& b) { return a.exp < b.exp; });
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].exp < 0) throw std::invalid_argument("SparsePoly: negative exponent");
      if (i > 0 && terms_[i].exp == terms_[i - 1].exp) {
        throw std::invalid_argument("SparsePoly: repeated exponent " + terms_[i].exp.get_str());
      }
    }
  }

  const std::vector<Term<C>>& terms() const { return terms_; }
  std::size_t sparsity() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Degree; 0 for the zero polynomial.
  BigInt degree() const { return terms_.empty() ? BigInt(0) : terms_.back().exp; }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::vector<Term<C>> terms_;
};

/// f rem (x^p - 1) as a dense length-p coefficient vector.
template <class C>
class DenseImage {
 public:
  explicit DenseImage(std::uint64_t p) : coeffs_(p) {}
  DenseImage(std::uint64_t p, std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != p) throw std::invalid_argument("DenseImage: length must equal p");
  }

  std::uint64_t modulus() const { return coeffs_.size(); }
  std::span<const C> coeffs() const { return coeffs_; }
  std::span<C> coeffs() { return coeffs_; }
  const C& operator[](std::size_t i) const { return coeffs_[i]; }
  C& operator[](std::size_t i) { return coeffs_[i]; }

  friend bool operator==(const DenseImage&, const DenseImage&) = default;

 private:
  std::vector<C> coeffs_;
};

template <class C>
struct MultiTerm {
  C coeff;
  std::vector<std::uint64_t> exps;

  friend bool operator==(const MultiTerm&, const MultiTerm&) = default;
};

/// n-variate sparse polynomial; terms ordered with the last variable most
/// significant, which is the order Kronecker packing produces.
template <class C>
class MultiSparsePoly {
 public:
  explicit MultiSparsePoly(std::size_t nvars = 1) : nvars_(nvars) {}

  MultiSparsePoly(std::size_t nvars, std::vector<MultiTerm<C>> terms)
      : nvars_(nvars), terms_(std::move(terms)) {
    if (nvars_ == 0) throw std::invalid_argument("MultiSparsePoly: need at least one variable");
    std::erase_if(terms_, [](const MultiTerm<C>& t) { return is_zero(t.coeff); });
    for (const auto& t : terms_) {
      if (t.exps.size() != nvars_) {
        throw std::invalid_argument("MultiSparsePoly: exponent tuple has wrong arity");
      }
    }
    auto less = [](const MultiTerm<C>& a, const MultiTerm<C>& b) {
      return std::lexicographical_compare(a.exps.rbegin(), a.exps.rend(), b.exps.rbegin(),
                                          b.exps.rend());
    };
    std::sort(terms_.begin(), terms_.end(), less);
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      if (terms_[i].exps == terms_[i - 1].exps) {
        throw std::invalid_argument("MultiSparsePoly: repeated exponent tuple");
      }
    }
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<MultiTerm<C>>& terms() const { return terms_; }
  std::size_t sparsity() const { return terms_.size(); }

  friend bool operator==(const MultiSparsePoly&, const MultiSparsePoly&) = default;

 private:
  std::size_t nvars_;
  std::vector<MultiTerm<C>> terms_;
};

/// exp(2 pi i num / den) with the angle reduced in integer arithmetic first.
Complex unit_circle(std::uint64_t num, std::uint64_t den);

/// The point zeta^index for zeta = exp(2 pi i / order), i.e. index/order of
/// a full turn. Arguments are kept as exact rationals; only the final
/// value goes through trig.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  /// Throws std::invalid_argument if order == 0.
  RootOfUnity(std::uint64_t order, std::uint64_t index);

  std::uint64_t order() const { return order_; }
  std::uint64_t index() const { return index_; }

  Complex value() const { return unit_circle(index_, order_); }
  /// (index * e) mod order, computed exactly.
  std::uint64_t phase_index(const BigInt& e) const;
  /// zeta^(index * e).
  Complex pow(const BigInt& e) const { return unit_circle(phase_index(e), order_); }

  RootOfUnity inverse() const { return RootOfUnity(order_, order_ - index_); }
  /// Product of points: adds the turns and reduces the fraction.
  /// Throws std::overflow_error if the combined order exceeds 64 bits.
  friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b);
  /// Equality of the points themselves (fractions compared reduced).
  friend bool operator==(const RootOfUnity& a, const RootOfUnity& b);

 private:
  std::uint64_t order_ = 1;
  std::uint64_t index_ = 0;
};

/// Coefficient j is sum over e_i = j (mod p) of c_i alpha^{e_i}.
DenseImage<Fq> eval_mod_cyclic(const PrimeField& field, const SparsePoly<Fq>& f,
                               std::uint64_t p, Fq alpha);
DenseImage<Complex> eval_mod_cyclic(const SparsePoly<Complex>& f, std::uint64_t p,
                                    const RootOfUnity& alpha = {});

/// Number of nonzero coefficients.
std::size_t sparsity(const DenseImage<Fq>& img);
/// Number of coefficients with |c| > tau.
std::size_t sparsity(const DenseImage<Complex>& img, double tau);

/// Nonzero coefficients pairwise distinct.
bool is_diverse(const DenseImage<Fq>& img);
/// Coefficients with |c| > tau pairwise at least eps_sep * sigma apart.
bool is_diverse(const DenseImage<Complex>& img, double eps_sep, double sigma, double tau = 0.0);

double norm2(const SparsePoly<Complex>& f);
double norm2(const DenseImage<Complex>& img);

/// True when no two exponents of f collide modulo p.
template <class C>
bool is_good_prime(const SparsePoly<C>& f, std::uint64_t p) {
  std::unordered_set<unsigned long> residues;
  for (const auto& t : f.terms()) {
    if (!residues.insert(mpz_fdiv_ui(t.exp.get_mpz_t(), p)).second) return false;
  }
  return true;
}

/// Substitutes x_j -> x^{d^{j-1}}. Throws std::invalid_argument when a
/// partial degree is >= d.
template <class C>
SparsePoly<C> kronecker_pack(const MultiSparsePoly<C>& f, std::uint64_t d) {
  if (d < 2) throw std::invalid_argument("kronecker_pack: d must be at least 2");
  std::vector<Term<C>> out;
  out.reserve(f.sparsity());
  for (const auto& t : f.terms()) {
    BigInt e = 0;
    for (std::size_t j = t.exps.size(); j-- > 0;) {
      if (t.exps[j] >= d) {
        throw std::invalid_argument("kronecker_pack: partial degree not below d");
      }
      e *= static_cast<unsigned long>(d);
      e += static_cast<unsigned long>(t.exps[j]);
    }
    out.push_back({t.coeff, std::move(e)});
  }
  return SparsePoly<C>(std::move(out));
}

/// Inverse of kronecker_pack: base-d digits of each exponent. Throws
/// std::invalid_argument when an exponent is >= d^n.
template <class C>
MultiSparsePoly<C> kronecker_unpack(const SparsePoly<C>& g, std::uint64_t d, std::size_t n) {
  if (d < 2 || n == 0) throw std::invalid_argument("kronecker_unpack: need d >= 2 and n >= 1");
  BigInt bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), d, n);
  std::vector<MultiTerm<C>> out;
  out.reserve(g.sparsity());
  for (const auto& t : g.terms()) {
    if (t.exp >= bound) throw std::invalid_argument("kronecker_unpack: exponent >= d^n");
    BigInt rest = t.exp;
    std::vector<std::uint64_t> exps(n);
    for (std::size_t j = 0; j < n; ++j) {
      exps[j] = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
    }
    out.push_back({t.coeff, std::move(exps)});
  }
  return MultiSparsePoly<C>(n, std::move(out));
}

SparsePoly<Fq> poly_sub(const PrimeField& field, const SparsePoly<Fq>& f,
                        const SparsePoly<Fq>& g);
SparsePoly<Complex> poly_sub(const SparsePoly<Complex>& f, const SparsePoly<Complex>& g);

template <class C>
bool poly_eq(const SparsePoly<C>& f, const SparsePoly<C>& g) {
  return f == g;
}

}  // namespace sparsediv
