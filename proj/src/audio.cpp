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

#include "pat/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "pat/error.hpp"

namespace pat {

namespace {

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void write_u16(std::ofstream& os, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

void write_u32(std::ofstream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

double peak_amplitude(const Waveform& w) {
  double p = 0.0;
  for (double s : w.samples) p = std::max(p, std::abs(s));
  return p;
}

Waveform load_wav(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kFileNotFound, "wav file not found: " + path);
  }
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw Error(ErrorCode::kFileNotFound, "cannot open wav file: " + path);
  }

  unsigned char riff[12];
  if (!is.read(reinterpret_cast<char*>(riff), 12)) {
    throw Error(ErrorCode::kTruncatedWav, "truncated RIFF header: " + path);
  }
  if (std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(riff + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kTruncatedWav, "not a RIFF/WAVE file: " + path);
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  Waveform w;

  // Walk chunks until the data chunk; skip everything unknown.
  for (;;) {
    unsigned char hdr[8];
    if (!is.read(reinterpret_cast<char*>(hdr), 8)) {
      throw Error(ErrorCode::kTruncatedWav, "missing data chunk: " + path);
    }
    const std::uint32_t size = read_u32(hdr + 4);
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16) {
        throw Error(ErrorCode::kTruncatedWav, "short fmt chunk: " + path);
      }
      unsigned char fmt[16];
      if (!is.read(reinterpret_cast<char*>(fmt), 16)) {
        throw Error(ErrorCode::kTruncatedWav, "truncated fmt chunk: " + path);
      }
      format = read_u16(fmt + 0);
      channels = read_u16(fmt + 2);
      rate = read_u32(fmt + 4);
      bits = read_u16(fmt + 14);
      if (size > 16) is.seekg(size - 16 + (size % 2), std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      if (!have_fmt) {
        throw Error(ErrorCode::kTruncatedWav, "data chunk before fmt: " + path);
      }
      if (format != 1) {
        throw Error(ErrorCode::kNonPcmWav, "non-PCM encoding: " + path);
      }
      if (channels != 1) {
        throw Error(ErrorCode::kMultiChannelWav,
                    "expected mono, got " + std::to_string(channels) +
                        " channels: " + path);
      }
      if (bits != 16) {
        throw Error(ErrorCode::kNonPcmWav,
                    "expected 16-bit samples, got " + std::to_string(bits) +
                        ": " + path);
      }
      const std::size_t n = size / 2;
      std::vector<std::int16_t> raw(n);
      if (n > 0 && !is.read(reinterpret_cast<char*>(raw.data()), n * 2)) {
        throw Error(ErrorCode::kTruncatedWav, "truncated sample data: " + path);
      }
      w.sample_rate = static_cast<int>(rate);
      w.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        // 1/32767 mirrors the writer's scale so a save/load cycle is the
        // identity on every file the writer can produce.
        w.samples[i] = std::clamp(raw[i] / 32767.0, -1.0, 1.0);
      }
      return w;
    } else {
      is.seekg(size + (size % 2), std::ios::cur);
      if (!is) {
        throw Error(ErrorCode::kTruncatedWav, "truncated chunk list: " + path);
      }
    }
  }
}

void save_wav(const Waveform& w, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error(ErrorCode::kUnwritablePath, "cannot write wav file: " + path);
  }
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(w.samples.size() * 2);
  os.write("RIFF", 4);
  write_u32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  write_u32(os, 16);
  write_u16(os, 1);  // PCM
  write_u16(os, 1);  // mono
  write_u32(os, static_cast<std::uint32_t>(w.sample_rate));
  write_u32(os, static_cast<std::uint32_t>(w.sample_rate) * 2);
  write_u16(os, 2);   // block align
  write_u16(os, 16);  // bits per sample
  os.write("data", 4);
  write_u32(os, data_bytes);
  for (double s : w.samples) {
    const double c = std::clamp(s, -1.0, 1.0);
    const auto q = static_cast<std::int16_t>(std::lround(c * 32767.0));
    unsigned char b[2] = {static_cast<unsigned char>(q & 0xff),
                          static_cast<unsigned char>((q >> 8) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 2);
  }
  if (!os) {
    throw Error(ErrorCode::kUnwritablePath, "short write on wav file: " + path);
  }
}

DbReading db_relative(const Waveform& noise, const Waveform& reference) {
  if (noise.empty() || reference.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "db_relative on empty waveform");
  }
  const double ref_peak = peak_amplitude(reference);
  if (ref_peak <= 0.0) {
    throw Error(ErrorCode::kSilentReference,
                "db_relative reference is silent (peak 0)");
  }
  const double noise_peak = peak_amplitude(noise);
  return DbReading{20.0 * std::log10(noise_peak) - 20.0 * std::log10(ref_peak)};
}

Waveform mix(const Waveform& a, const Waveform& b) {
  if (a.sample_rate != b.sample_rate) {
    throw Error(ErrorCode::kShapeMismatch, "mix: sample rate mismatch");
  }
  if (a.samples.size() != b.samples.size()) {
    throw Error(ErrorCode::kShapeMismatch, "mix: length mismatch");
  }
  Waveform out;
  out.sample_rate = a.sample_rate;
  out.samples.resize(a.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    out.samples[i] = std::clamp(a.samples[i] + b.samples[i], -1.0, 1.0);
  }
  return out;
}

Waveform resample_linear(const Waveform& w, int target_rate) {
  if (target_rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "resample: nonpositive rate");
  }
  if (w.sample_rate == target_rate || w.empty()) {
    Waveform out = w;
    out.sample_rate = target_rate;
    return out;
  }
  const double ratio = static_cast<double>(w.sample_rate) / target_rate;
  const auto n_out = static_cast<std::size_t>(
      std::floor(static_cast<double>(w.samples.size() - 1) / ratio)) + 1;
  Waveform out;
  out.sample_rate = target_rate;
  out.samples.resize(n_out);
  for (std::size_t i = 0; i < n_out; ++i) {
    const double pos = i * ratio;
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, w.samples.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    out.samples[i] = w.samples[lo] * (1.0 - frac) + w.samples[hi] * frac;
  }
  return out;
}

}  // namespace pat
