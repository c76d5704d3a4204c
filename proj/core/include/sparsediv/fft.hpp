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

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sparsediv {

using Complex = std::complex<double>;

/// Discrete Fourier transform of any length. Powers of two run radix-2;
/// every other length (in particular primes) goes through Bluestein's
/// chirp-z reduction to a power-of-two cyclic convolution. All twiddles and
/// chirps are computed from exactly reduced integer angles.
class Dft {
 public:
  explicit Dft(std::size_t n);
  ~Dft();
  Dft(Dft&&) noexcept;
  Dft& operator=(Dft&&) noexcept;

  std::size_t size() const { return n_; }

  /// data_k <- sum_j data_j exp(sign * 2 pi i j k / n), unnormalized.
  /// sign must be +1 or -1.
  void transform(std::span<Complex> data, int sign) const;

 private:
  struct Radix2;
  std::size_t n_;
  std::unique_ptr<Radix2> radix2_;
  // Bluestein state; unused when n is a power of two.
  std::size_t conv_size_ = 0;
  std::vector<Complex> chirp_;         // exp(+i pi j^2 / n)
  std::vector<Complex> kernel_plus_;   // FFT of conj(chirp) laid out circularly
  std::vector<Complex> kernel_minus_;  // FFT of chirp laid out circularly
};

/// Cached per-thread plan for length n.
const Dft& dft_plan(std::size_t n);

/// V(omega) b: values b(omega^j), omega = exp(2 pi i / p), p = coeffs.size().
std::vector<Complex> evaluate_on_roots(std::span<const Complex> coeffs);

/// (1/p) V(omega^{-1}) w: the coefficients of the unique degree < p
/// polynomial taking the values w at the p-th roots of unity.
std::vector<Complex> interpolate_from_roots(std::span<const Complex> values);

}  // namespace sparsediv
