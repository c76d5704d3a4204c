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

// Sparse interpolation of complex polynomials from evaluations with relative
// error eps. Diversification uses x -> zeta^k x for a root of unity zeta of
// prime order s, so evaluation points stay exactly on the unit circle.
//
// All thresholds are relative to sigma, an estimate of ||f||:
//   term present      |c| > tau = (delta / 2) sigma
//   coefficient match |c - key| <= 2.5 eps' sigma
//   key separation    |key_i - key_j| >= 5 eps' sigma
// where eps' = eps + kRoundoff absorbs floating-point error of the transforms.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsediv/blackbox.hpp"
#include "sparsediv/ffinterp.hpp"
#include "sparsediv/numt.hpp"
#include "sparsediv/poly.hpp"

namespace sparsediv {

inline constexpr double kRoundoff = 1e-13;

struct ApproxConfig {
  std::uint64_t terms = 1;  // T
  BigInt degree_bound = 2;  // D
  double eps = 0.0;         // relative error of the black box
  double delta = 0.01;      // |c_i| >= delta ||f|| for every term
  double mu = 0.1;          // failure probability
  double guard = 4.0;       // diversification gives up once s > guard * t^2

  /// Throws std::invalid_argument unless T >= 1, D >= 2, 0 <= eps < 1/2,
  /// eps <= delta <= 1, 0 < mu < 1 and guard >= 1.
  void validate() const;
  /// eps < 1.5 delta / (T (T - 1)), needed by approx_interpolate.
  bool separable() const;
  double eps_eff() const { return eps + kRoundoff; }
};

/// One draw: ||f(x) rem (x^p - 1)|| for a random p in {lambda..2 lambda},
/// i.e. the evaluation-vector norm over sqrt(p).
double approx_norm(const ComplexBlackBox& box, const ApproxConfig& cfg, Rng& rng);
/// Median of `draws` independent approx_norm draws.
double approx_norm_median(const ComplexBlackBox& box, const ApproxConfig& cfg, Rng& rng,
                          std::uint64_t draws);

/// h ~ f(alpha x) rem (x^p - 1) from p noisy evaluations and an inverse DFT.
DenseImage<Complex> approx_remainder(const EpsApproxBox& box, std::uint64_t p,
                                     const RootOfUnity& alpha);

/// Smallest d such that the image coefficients of magnitude >= d sigma are
/// pairwise at least `sep` apart; 0 if all coefficients above tau are.
double separation_floor(const DenseImage<Complex>& img, double sigma, double tau, double sep);

struct ApproxDiversification {
  std::optional<RootOfUnity> alpha;
  std::optional<DenseImage<Complex>> image;  // accepted image at p
  double delta_hat = 0.0;                    // separation floor of the last image
  std::uint64_t attempts = 0;
  std::uint64_t last_order = 0;
};

/// Searches s = 2, 3, 5, 11, ... (least prime >= 2s), drawing k uniformly in
/// {0..s-1} ceil(log2(3/mu)) times per s, until the image at p has exactly t
/// terms above tau, pairwise separated. Gives up once s > guard t^2.
ApproxDiversification diversify_approx(const ComplexBlackBox& box, std::uint64_t p,
                                       std::uint64_t t, double sigma, const ApproxConfig& cfg,
                                       Rng& rng);

struct ApproxResult {
  SparsePoly<Complex> poly;
  ProbeStats stats;
  InterpStatus status = InterpStatus::ok;
  std::string reason;
  double sigma = 0.0;
  std::optional<RootOfUnity> alpha;
  double delta_hat = 0.0;
  std::uint64_t diversify_attempts = 0;

  bool ok() const { return status == InterpStatus::ok; }
};

/// Combined algorithm; on success ||f - g|| <= 2 eps ||f|| with probability
/// >= 1 - mu. Throws std::invalid_argument if !cfg.separable().
ApproxResult approx_interpolate(const ComplexBlackBox& box, const ApproxConfig& cfg, Rng& rng);

/// Heuristic delta for callers that lack one: smallest coefficient above the
/// noise floor of one image, relative to its norm. Not a guarantee.
double suggest_delta(const ComplexBlackBox& box, const ApproxConfig& cfg, Rng& rng);

}  // namespace sparsediv
