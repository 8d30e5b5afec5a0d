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

#include "pat/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>

#include "pat/error.hpp"
#include "pat/fft.hpp"

namespace pat {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kNumBins = kFftSize / 2 + 1;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

const std::vector<double>& hann_window() {
  static const std::vector<double> win = [] {
    std::vector<double> w(kFrameLen);
    for (int i = 0; i < kFrameLen; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / kFrameLen);
    }
    return w;
  }();
  return win;
}

MelFilterbank build_filterbank() {
  // 40 triangles with feet/apexes on a uniform mel grid from 0 Hz to the
  // Nyquist frequency.
  const double mel_lo = hz_to_mel(0.0);
  const double mel_hi = hz_to_mel(kSampleRate / 2.0);
  std::vector<double> edges_hz(kNumBands + 2);
  for (int i = 0; i < kNumBands + 2; ++i) {
    edges_hz[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (kNumBands + 1));
  }

  MelFilterbank fb;
  fb.first_bin.resize(kNumBands);
  fb.weights.resize(kNumBands);
  fb.center_hz.resize(kNumBands);
  const double hz_per_bin = static_cast<double>(kSampleRate) / kFftSize;
  for (int b = 0; b < kNumBands; ++b) {
    const double left = edges_hz[b], center = edges_hz[b + 1],
                 right = edges_hz[b + 2];
    fb.center_hz[b] = center;
    std::vector<double> w;
    std::size_t first = kNumBins;
    for (std::size_t k = 0; k < kNumBins; ++k) {
      const double hz = k * hz_per_bin;
      double v = 0.0;
      if (hz > left && hz < right) {
        v = hz <= center ? (hz - left) / (center - left)
                         : (right - hz) / (right - center);
      }
      if (v > 0.0) {
        if (first == kNumBins) first = k;
        w.push_back(v);
      } else if (first != kNumBins) {
        break;  // triangles cover one contiguous bin run
      }
    }
    fb.first_bin[b] = first == kNumBins ? 0 : first;
    fb.weights[b] = std::move(w);
  }
  return fb;
}

// One windowed frame's full complex spectrum (kFftSize points).
std::vector<std::complex<double>> frame_spectrum(const Waveform& w,
                                                 std::size_t frame,
                                                 const Fft& fft) {
  const std::vector<double>& win = hann_window();
  std::vector<std::complex<double>> buf(kFftSize);
  const std::size_t off = frame * kFrameHop;
  for (int i = 0; i < kFrameLen; ++i) {
    buf[i] = w.samples[off + i] * win[i];
  }
  fft.forward(&buf);
  return buf;
}

}  // namespace

const MelFilterbank& mel_filterbank() {
  static const MelFilterbank fb = build_filterbank();
  return fb;
}

std::size_t num_frames(std::size_t n_samples) {
  if (n_samples < static_cast<std::size_t>(kFrameLen)) {
    throw Error(ErrorCode::kShapeMismatch,
                "waveform shorter than one frame: " + std::to_string(n_samples) +
                    " < " + std::to_string(kFrameLen) + " samples");
  }
  return (n_samples - kFrameLen) / kFrameHop + 1;
}

FeatureMatrix log_mel_forward(const Waveform& w) {
  const std::size_t frames = num_frames(w.size());
  const MelFilterbank& fb = mel_filterbank();
  const Fft fft(kFftSize);

  FeatureMatrix out;
  out.frames = frames;
  out.bands = kNumBands;
  out.values.resize(frames * kNumBands);
  for (std::size_t t = 0; t < frames; ++t) {
    const auto spec = frame_spectrum(w, t, fft);
    double mag[kNumBins];
    for (std::size_t k = 0; k < kNumBins; ++k) mag[k] = std::abs(spec[k]);
    for (int b = 0; b < kNumBands; ++b) {
      double acc = 0.0;
      const auto& ws = fb.weights[b];
      const std::size_t k0 = fb.first_bin[b];
      for (std::size_t j = 0; j < ws.size(); ++j) acc += ws[j] * mag[k0 + j];
      out.at(t, b) = std::log(acc + kLogFloor);
    }
  }
  return out;
}

std::vector<double> log_mel_backward(const Waveform& w,
                                     const FeatureGradient& g) {
  const std::size_t frames = num_frames(w.size());
  if (g.frames != frames || g.bands != static_cast<std::size_t>(kNumBands)) {
    throw Error(ErrorCode::kShapeMismatch,
                "feature gradient shape does not match log_mel_forward(w)");
  }
  const MelFilterbank& fb = mel_filterbank();
  const std::vector<double>& win = hann_window();
  const Fft fft(kFftSize);

  std::vector<double> grad(w.size(), 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    const auto spec = frame_spectrum(w, t, fft);

    // log and filterbank-transpose stages: d(loss)/d|X_k|.
    double dmag[kNumBins] = {0.0};
    for (int b = 0; b < kNumBands; ++b) {
      double acc = 0.0;
      const auto& ws = fb.weights[b];
      const std::size_t k0 = fb.first_bin[b];
      for (std::size_t j = 0; j < ws.size(); ++j) {
        acc += ws[j] * std::abs(spec[k0 + j]);
      }
      const double dmel = g.at(t, b) / (acc + kLogFloor);
      for (std::size_t j = 0; j < ws.size(); ++j) dmag[k0 + j] += ws[j] * dmel;
    }

    // Magnitude stage: d|z|/dRe = Re/|z|, d|z|/dIm = Im/|z|, zero at z ~ 0.
    std::vector<std::complex<double>> dspec(kFftSize);
    for (std::size_t k = 0; k < kNumBins; ++k) {
      const double m = std::abs(spec[k]);
      if (m < 1e-12) continue;
      dspec[k] = {dmag[k] * spec[k].real() / m, dmag[k] * spec[k].imag() / m};
    }

    // DFT adjoint: with X_k = sum_t x_t exp(-2*pi*i*k*t/N), the gradient to
    // x_t is Re(sum_k G_k exp(+2*pi*i*k*t/N)) — an unnormalized inverse
    // transform of the half-spectrum gradient (upper bins stay zero: the
    // forward pass never read them).
    fft.inverse_unscaled(&dspec);

    // Window and overlap-add; the zero-padded tail never touches samples.
    const std::size_t off = t * kFrameHop;
    for (int i = 0; i < kFrameLen; ++i) {
      grad[off + i] += dspec[i].real() * win[i];
    }
  }
  return grad;
}

void export_spectrogram(const Waveform& w, const std::string& path) {
  const std::size_t frames = num_frames(w.size());
  const Fft fft(kFftSize);

  std::vector<double> img(frames * kNumBins);
  double lo = 1e300, hi = -1e300;
  for (std::size_t t = 0; t < frames; ++t) {
    const auto spec = frame_spectrum(w, t, fft);
    for (std::size_t k = 0; k < kNumBins; ++k) {
      const double v = std::log(std::abs(spec[k]) + kLogFloor);
      img[t * kNumBins + k] = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }

  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error(ErrorCode::kUnwritablePath, "cannot write spectrogram: " + path);
  }
  os << "P5\n" << frames << " " << kNumBins << "\n255\n";
  const double span = hi - lo;
  // Rows top-to-bottom run from the Nyquist bin down to bin 0.
  for (std::size_t r = 0; r < kNumBins; ++r) {
    const std::size_t k = kNumBins - 1 - r;
    for (std::size_t t = 0; t < frames; ++t) {
      const double v = img[t * kNumBins + k];
      const int px = span > 0.0 ? static_cast<int>(std::lround((v - lo) / span * 255.0)) : 0;
      os.put(static_cast<char>(std::clamp(px, 0, 255)));
    }
  }
  if (!os) {
    throw Error(ErrorCode::kUnwritablePath, "short write on spectrogram: " + path);
  }
}

}  // namespace pat
