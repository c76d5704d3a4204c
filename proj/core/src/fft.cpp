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

#include "sparsediv/fft.hpp"

#include <bit>
#include <list>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "sparsediv/poly.hpp"

namespace sparsediv {

struct Dft::Radix2 {
  std::size_t m;
  int log_m;
  std::vector<Complex> twiddle;  // exp(-2 pi i k / m), k < m/2
  std::vector<std::size_t> rev;

  explicit Radix2(std::size_t size) : m(size), log_m(std::countr_zero(size)), twiddle(size / 2), rev(size) {
    for (std::size_t k = 0; k < m / 2; ++k) twiddle[k] = unit_circle(m - k, m);
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t r = 0;
      for (int b = 0; b < log_m; ++b) r |= ((i >> b) & 1) << (log_m - 1 - b);
      rev[i] = r;
    }
  }

  void run(std::span<Complex> a, int sign) const {
    for (std::size_t i = 0; i < m; ++i) {
      if (i < rev[i]) std::swap(a[i], a[rev[i]]);
    }
    for (std::size_t len = 2; len <= m; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = m / len;
      for (std::size_t start = 0; start < m; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          Complex w = twiddle[k * stride];
          if (sign > 0) w = std::conj(w);
          const Complex u = a[start + k];
          const Complex v = a[start + k + half] * w;
          a[start + k] = u + v;
          a[start + k + half] = u - v;
        }
      }
    }
  }
};

Dft::Dft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Dft: length must be positive");
  if (std::has_single_bit(n)) {
    radix2_ = std::make_unique<Radix2>(n);
    return;
  }
  conv_size_ = std::bit_ceil(2 * n - 1);
  radix2_ = std::make_unique<Radix2>(conv_size_);

  // exp(i pi j^2 / n) = unit_circle(j^2 mod 2n, 2n).
  chirp_.resize(n);
  const unsigned __int128 two_n = 2 * static_cast<unsigned __int128>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto sq = static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * j % two_n);
    chirp_[j] = unit_circle(sq, 2 * n);
  }
  kernel_plus_.assign(conv_size_, Complex{});
  kernel_minus_.assign(conv_size_, Complex{});
  for (std::size_t j = 0; j < n; ++j) {
    kernel_plus_[j] = std::conj(chirp_[j]);
    kernel_minus_[j] = chirp_[j];
    if (j > 0) {
      kernel_plus_[conv_size_ - j] = std::conj(chirp_[j]);
      kernel_minus_[conv_size_ - j] = chirp_[j];
    }
  }
  radix2_->run(kernel_plus_, -1);
  radix2_->run(kernel_minus_, -1);
}

Dft::~Dft() = default;
Dft::Dft(Dft&&) noexcept = default;
Dft& Dft::operator=(Dft&&) noexcept = default;

void Dft::transform(std::span<Complex> data, int sign) const {
  if (data.size() != n_) throw std::invalid_argument("Dft: length mismatch");
  if (sign != 1 && sign != -1) throw std::invalid_argument("Dft: sign must be +1 or -1");
  if (conv_size_ == 0) {
    radix2_->run(data, sign);
    return;
  }
  // w^{jk} = c_j c_k conj(c_{k-j}) with c_j = exp(sign i pi j^2 / n).
  auto chirp = [&](std::size_t j) { return sign > 0 ? chirp_[j] : std::conj(chirp_[j]); };
  std::vector<Complex> buf(conv_size_);
  for (std::size_t j = 0; j < n_; ++j) buf[j] = data[j] * chirp(j);
  radix2_->run(buf, -1);
  const auto& kernel = sign > 0 ? kernel_plus_ : kernel_minus_;
  for (std::size_t i = 0; i < conv_size_; ++i) buf[i] *= kernel[i];
  radix2_->run(buf, +1);
  const double scale = 1.0 / static_cast<double>(conv_size_);
  for (std::size_t k = 0; k < n_; ++k) data[k] = buf[k] * scale * chirp(k);
}

const Dft& dft_plan(std::size_t n) {
  // Small LRU; probe loops cycle through a handful of lengths.
  constexpr std::size_t kCapacity = 16;
  thread_local std::list<std::pair<std::size_t, Dft>> plans;
  for (auto it = plans.begin(); it != plans.end(); ++it) {
    if (it->first == n) {
      plans.splice(plans.begin(), plans, it);
      return plans.front().second;
    }
  }
  plans.emplace_front(n, Dft(n));
  if (plans.size() > kCapacity) plans.pop_back();
  return plans.front().second;
}

std::vector<Complex> evaluate_on_roots(std::span<const Complex> coeffs) {
  std::vector<Complex> out(coeffs.begin(), coeffs.end());
  if (!out.empty()) dft_plan(out.size()).transform(out, +1);
  return out;
}

std::vector<Complex> interpolate_from_roots(std::span<const Complex> values) {
  std::vector<Complex> out(values.begin(), values.end());
  if (out.empty()) return out;
  dft_plan(out.size()).transform(out, -1);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (Complex& c : out) c *= scale;
  return out;
}

}  // namespace sparsediv
