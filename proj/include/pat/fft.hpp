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

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pat {

// In-place iterative radix-2 complex FFT.  Sizes must be powers of two;
// twiddle factors and the bit-reversal permutation are precomputed once per
// size so repeated transforms (one per analysis frame, two per convolution)
// cost no setup.
class Fft {
 public:
  // `n` must be a power of two >= 1.
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  // Forward DFT, unnormalized: X[k] = sum_t x[t] exp(-2*pi*i*k*t/n).
  void forward(std::vector<std::complex<double>>* buf) const;

  // Inverse DFT without the 1/n factor; callers that need a true inverse
  // divide by size() themselves.  Keeping the scale out makes the adjoint
  // of `forward` exactly `inverse_unscaled` with conjugation handled by
  // the caller.
  void inverse_unscaled(std::vector<std::complex<double>>* buf) const;

  static bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }
  static std::size_t next_power_of_two(std::size_t n);

 private:
  void transform(std::vector<std::complex<double>>* buf, bool inverse) const;

  std::size_t n_;
  std::vector<std::size_t> bit_reverse_;
  std::vector<std::complex<double>> twiddles_;  // exp(-2*pi*i*k/n), k < n/2
};

// Full linear convolution of `a` and `b` (output length |a|+|b|-1) computed
// by zero-padded FFT.  Used for RIR application, where |b| runs to thousands
// of taps and the direct O(|a|*|b|) loop is far too slow inside the attack
// iteration.
std::vector<double> fft_convolve(const std::vector<double>& a,
                                 const std::vector<double>& b);

// Cross-correlation out[i] = sum_j a[i + j] * b[j] for i in [0, |a| - 1],
// with a treated as zero past its end.  This is the adjoint of "convolve
// with b then truncate to |a|", which is exactly the backward pass of RIR
// application.  Requires |b| >= 1.
std::vector<double> fft_correlate(const std::vector<double>& a,
                                  const std::vector<double>& b);

}  // namespace pat

