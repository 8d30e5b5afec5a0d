// Copyright 2026 The pat Authors
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

#include "pat/fft.hpp"

#include <cmath>
#include <memory>
#include <unordered_map>

#include "pat/error.hpp"

namespace pat {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Plans are cheap but not free; convolutions of the same shape recur many
// thousands of times per attack, so cache one plan per size per thread.
const Fft& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<Fft>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<Fft>(n)).first;
  }
  return *it->second;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "fft size must be a power of two, got " + std::to_string(n));
  }
  bit_reverse_.resize(n);
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < log2n; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
    }
    bit_reverse_[i] = r;
  }
  twiddles_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    twiddles_[k] = {std::cos(angle), std::sin(angle)};
  }
}

std::size_t Fft::next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void Fft::transform(std::vector<std::complex<double>>* buf, bool inverse) const {
  if (buf->size() != n_) {
    throw Error(ErrorCode::kShapeMismatch,
                "fft buffer size " + std::to_string(buf->size()) +
                    " does not match plan size " + std::to_string(n_));
  }
  auto& x = *buf;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j = bit_reverse_[i];
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> w = twiddles_[k * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> u = x[start + k];
        const std::complex<double> v = x[start + k + half] * w;
        x[start + k] = u + v;
        x[start + k + half] = u - v;
      }
    }
  }
}

void Fft::forward(std::vector<std::complex<double>>* buf) const {
  transform(buf, /*inverse=*/false);
}

void Fft::inverse_unscaled(std::vector<std::complex<double>>* buf) const {
  transform(buf, /*inverse=*/true);
}

std::vector<double> fft_convolve(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "fft_convolve on empty input");
  }
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = Fft::next_power_of_two(out_len);
  const Fft& fft = plan_for(n);

  std::vector<std::complex<double>> fa(n), fb(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft.forward(&fa);
  fft.forward(&fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fft.inverse_unscaled(&fa);

  std::vector<double> out(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real() * scale;
  return out;
}

std::vector<double> fft_correlate(const std::vector<double>& a,
                                  const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "fft_correlate on empty input");
  }
  // Correlation with b equals convolution with b reversed, shifted so that
  // out[i] lands at index i + |b| - 1 of the full convolution.
  std::vector<double> rb(b.rbegin(), b.rend());
  std::vector<double> full = fft_convolve(a, rb);
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t j = i + b.size() - 1;
    if (j < full.size()) out[i] = full[j];
  }
  return out;
}

}  // namespace pat
