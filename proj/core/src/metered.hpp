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

#include <cmath>

#include "sparsediv/blackbox.hpp"

namespace sparsediv::detail {

// Forwards to a caller's box while counting this run's probes separately,
// so one box can serve several runs with per-run statistics.
class MeteredFqBox final : public FqBlackBox {
 public:
  explicit MeteredFqBox(const FqBlackBox& inner) : FqBlackBox(inner.field(), nullptr), inner_(inner) {}

  DenseImage<Fq> probe(std::uint64_t p, const Fq& alpha) const override {
    counter_->record_probe(p);
    return inner_.probe(p, alpha);
  }

 private:
  const FqBlackBox& inner_;
};

// Same for complex boxes; every probe is p point evaluations.
class MeteredComplexBox final : public ComplexBlackBox {
 public:
  explicit MeteredComplexBox(const ComplexBlackBox& inner) : ComplexBlackBox(nullptr), inner_(inner) {}

  DenseImage<Complex> probe(std::uint64_t p, const RootOfUnity& alpha) const override {
    counter_->record_probe(p);
    counter_->record_evals(p);
    return inner_.probe(p, alpha);
  }

 private:
  const ComplexBlackBox& inner_;
};

// ceil(x), snapping values within rounding noise of an integer.
inline std::uint64_t ceil_snapped(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace sparsediv::detail
