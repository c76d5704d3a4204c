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

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "sparsediv/numt.hpp"
#include "sparsediv/poly.hpp"

namespace sparsediv {

/// Cost record of one interpolation run.
struct ProbeStats {
  std::uint64_t probes = 0;
  std::uint64_t max_p = 0;
  std::uint64_t evals = 0;  // point evaluations (approximate boxes only)

  friend bool operator==(const ProbeStats&, const ProbeStats&) = default;
};

/// Thread-safe probe accounting shared by a box and every wrapper around it.
class ProbeCounter {
 public:
  void record_probe(std::uint64_t p);
  void record_evals(std::uint64_t n) { evals_.fetch_add(n, std::memory_order_relaxed); }
  ProbeStats snapshot() const;

 private:
  std::atomic<std::uint64_t> probes_{0};
  std::atomic<std::uint64_t> max_p_{0};
  std::atomic<std::uint64_t> evals_{0};
};

/// Oracle returning f(alpha x) rem (x^p - 1). The only modulus supported is
/// x^p - 1; Point is the multiplier type (a field element, or a point on the
/// unit circle for complex coefficients).
///
/// Leaf backends record every probe in the shared counter. Wrappers forward
/// to the box they wrap and share its counter, so a probe is never counted
/// twice.
template <class C, class Point>
class RemainderBlackBox {
 public:
  using Coeff = C;
  using Multiplier = Point;

  virtual ~RemainderBlackBox() = default;

  virtual DenseImage<C> probe(std::uint64_t p, const Point& alpha) const = 0;

  ProbeStats stats() const { return counter_->snapshot(); }
  const std::shared_ptr<ProbeCounter>& counter() const { return counter_; }

 protected:
  explicit RemainderBlackBox(std::shared_ptr<ProbeCounter> counter)
      : counter_(counter ? std::move(counter) : std::make_shared<ProbeCounter>()) {}

  std::shared_ptr<ProbeCounter> counter_;
};

/// Black box over F_q.
class FqBlackBox : public RemainderBlackBox<Fq, Fq> {
 public:
  const PrimeField& field() const { return field_; }

 protected:
  FqBlackBox(const PrimeField& field, std::shared_ptr<ProbeCounter> counter)
      : RemainderBlackBox(std::move(counter)), field_(field) {}

 private:
  PrimeField field_;
};

using ComplexBlackBox = RemainderBlackBox<Complex, RootOfUnity>;

/// Reference backend over an explicit polynomial.
class SparseFqBackend final : public FqBlackBox {
 public:
  SparseFqBackend(const PrimeField& field, SparsePoly<Fq> f);

  DenseImage<Fq> probe(std::uint64_t p, const Fq& alpha) const override;
  const SparsePoly<Fq>& poly() const { return f_; }

 private:
  SparsePoly<Fq> f_;
  std::vector<std::uint64_t> exp_mod_order_;  // e_i mod (q - 1)
};

/// Exact (noise-free) complex backend.
class SparseComplexBackend final : public ComplexBlackBox {
 public:
  explicit SparseComplexBackend(SparsePoly<Complex> f);

  DenseImage<Complex> probe(std::uint64_t p, const RootOfUnity& alpha) const override;
  const SparsePoly<Complex>& poly() const { return f_; }

 private:
  SparsePoly<Complex> f_;
};

/// probe(p, beta) = inner.probe(p, alpha * beta). The inner box must outlive
/// the wrapper.
class DiversifiedFqBox final : public FqBlackBox {
 public:
  DiversifiedFqBox(const FqBlackBox& inner, Fq alpha);

  DenseImage<Fq> probe(std::uint64_t p, const Fq& beta) const override;
  Fq alpha() const { return alpha_; }

 private:
  const FqBlackBox& inner_;
  Fq alpha_;
};

class DiversifiedComplexBox final : public ComplexBlackBox {
 public:
  DiversifiedComplexBox(const ComplexBlackBox& inner, RootOfUnity alpha);

  DenseImage<Complex> probe(std::uint64_t p, const RootOfUnity& beta) const override;

 private:
  const ComplexBlackBox& inner_;
  RootOfUnity alpha_;
};

/// Black box for f - g, with f hidden behind `inner` and g explicit.
class DifferenceFqBox final : public FqBlackBox {
 public:
  DifferenceFqBox(const FqBlackBox& inner, SparsePoly<Fq> g);

  DenseImage<Fq> probe(std::uint64_t p, const Fq& alpha) const override;

 private:
  const FqBlackBox& inner_;
  SparsePoly<Fq> g_;
};

/// epsilon-approximate black box: every point evaluation gamma of f at xi
/// satisfies |gamma - f(xi)| <= eps |f(xi)|. The perturbation is uniform in
/// that disk and is a pure function of (seed, xi), so results do not depend
/// on call order. probe() performs the FFT-based approximate remainder.
class EpsApproxBox final : public ComplexBlackBox {
 public:
  /// Throws std::invalid_argument unless 0 <= eps < 1/2.
  EpsApproxBox(SparsePoly<Complex> f, double eps, std::uint64_t seed);

  /// Noisy value at one point of the unit circle.
  Complex evaluate(const RootOfUnity& xi) const;
  /// Noisy values at alpha * omega^j, j = 0..p-1, omega = exp(2 pi i / p).
  std::vector<Complex> evaluate_circle(std::uint64_t p, const RootOfUnity& alpha) const;
  /// Noise-free values at the same points (test reference).
  std::vector<Complex> exact_circle(std::uint64_t p, const RootOfUnity& alpha) const;

  DenseImage<Complex> probe(std::uint64_t p, const RootOfUnity& alpha) const override;

  double eps() const { return eps_; }
  const SparsePoly<Complex>& poly() const { return f_; }

 private:
  Complex perturb(Complex exact, std::uint64_t num, std::uint64_t den) const;

  SparsePoly<Complex> f_;
  double eps_;
  std::uint64_t seed_;
};

/// Straight-line program over F_q evaluated densely in F_q[x]/(x^p - 1).
/// Instructions refer to earlier results by index; the last one is the
/// output.
class ExpressionFqBackend final : public FqBlackBox {
 public:
  enum class Op { constant, var, add, sub, mul };
  struct Instr {
    Op op;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    Fq value{};
  };

  /// Throws std::invalid_argument on an empty program or a forward reference.
  ExpressionFqBackend(const PrimeField& field, std::vector<Instr> program);

  /// Parses one instruction per line: `const <c>`, `x`, `add i j`,
  /// `sub i j`, `mul i j`.
  static ExpressionFqBackend parse(const PrimeField& field, const std::string& text);

  DenseImage<Fq> probe(std::uint64_t p, const Fq& alpha) const override;

  /// Cost l of one probe, in instructions.
  std::size_t cost() const { return program_.size(); }

 private:
  std::vector<Instr> program_;
};

}  // namespace sparsediv
