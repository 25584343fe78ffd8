// Copyright 2026 The Temporet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "temporet/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>

namespace temporet {

namespace {

constexpr double kPi = 3.14159265358979323846;

void clip_in_place(std::vector<double>& x) {
  for (double& v : x) v = std::clamp(v, -1.0, 1.0);
}

double peak(const std::vector<double>& x) {
  double p = 0.0;
  for (double v : x) p = std::max(p, std::abs(v));
  return p;
}

/// Linear-interpolation resampling to n_out samples.
std::vector<double> resample(const std::vector<double>& x, std::size_t n_out) {
  std::vector<double> out(n_out, 0.0);
  if (x.empty() || n_out == 0) return out;
  const double step = static_cast<double>(x.size()) / static_cast<double>(n_out);
  for (std::size_t i = 0; i < n_out; ++i) {
    double pos = i * step;
    auto i0 = static_cast<std::size_t>(pos);
    if (i0 >= x.size() - 1) {
      out[i] = x.back();
      continue;
    }
    double frac = pos - static_cast<double>(i0);
    out[i] = x[i0] * (1.0 - frac) + x[i0 + 1] * frac;
  }
  return out;
}

struct RiffChunk {
  char id[4];
  std::uint32_t size;
};

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0] | (p[1] << 8) | (p[2] << 16) |
                                    (static_cast<std::uint32_t>(p[3]) << 24));
}

void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
}
void put_u32(std::string& s, std::uint32_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>((v >> 16) & 0xff));
  s.push_back(static_cast<char>((v >> 24) & 0xff));
}

}  // namespace

AudioClip read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AudioError("cannot open WAV file '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw AudioError("'" + path + "' is not a RIFF/WAVE file");
  }
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  std::size_t pos = 12;
  int channels = 0, bits = 0, sample_rate = 0;
  std::size_t data_off = 0, data_len = 0;
  while (pos + 8 <= bytes.size()) {
    std::string id = bytes.substr(pos, 4);
    std::uint32_t size = read_u32(data + pos + 4);
    pos += 8;
    if (id == "fmt ") {
      if (size < 16) throw AudioError("malformed fmt chunk in '" + path + "'");
      std::uint16_t format = read_u16(data + pos);
      channels = read_u16(data + pos + 2);
      sample_rate = static_cast<int>(read_u32(data + pos + 4));
      bits = read_u16(data + pos + 14);
      if (format != 1) {
        throw AudioError("'" + path + "': unsupported encoding (want PCM)");
      }
    } else if (id == "data") {
      data_off = pos;
      data_len = size;
    }
    pos += size + (size & 1);
  }
  if (channels != 1) {
    throw AudioError("'" + path + "': expected mono, got " +
                     std::to_string(channels) + " channels");
  }
  if (bits != 16) {
    throw AudioError("'" + path + "': unsupported bit depth " +
                     std::to_string(bits));
  }
  if (data_off == 0 || data_off + data_len > bytes.size()) {
    throw AudioError("'" + path + "': missing or truncated data chunk");
  }
  AudioClip clip;
  clip.sample_rate_hz = sample_rate;
  clip.id = std::filesystem::path(path).stem().string();
  const std::size_t n = data_len / 2;
  clip.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = static_cast<std::int16_t>(read_u16(data + data_off + 2 * i));
    clip.samples[i] = std::max(-1.0, static_cast<double>(v) / 32767.0);
  }
  return clip;
}

void write_wav(const AudioClip& clip, const std::string& path) {
  std::string out;
  const auto n = static_cast<std::uint32_t>(clip.samples.size());
  out += "RIFF";
  put_u32(out, 36 + 2 * n);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate_hz));
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate_hz * 2));
  put_u16(out, 2);
  put_u16(out, 16);
  out += "data";
  put_u32(out, 2 * n);
  for (double v : clip.samples) {
    double c = std::clamp(v, -1.0, 1.0);
    auto q = static_cast<std::int16_t>(std::lround(c * 32767.0));
    put_u16(out, static_cast<std::uint16_t>(q));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw AudioError("cannot write WAV file '" + path + "'");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw AudioError("I/O failure writing '" + path + "'");
}

std::vector<SoundBankEntry> synth_bank(int n_labels, int clips_per_label,
                                       int sample_rate_hz, std::uint64_t seed) {
  if (n_labels < 2) throw AudioError("synth_bank needs n_labels >= 2");
  if (clips_per_label < 1) throw AudioError("synth_bank needs clips_per_label >= 1");
  Rng rng(seed);
  const double dur = 5.0;
  const auto n = static_cast<std::size_t>(std::llround(dur * sample_rate_hz));
  const double f_lo = 200.0;
  const double f_hi = std::min(6000.0, sample_rate_hz * 0.375);

  std::vector<SoundBankEntry> bank;
  bank.reserve(static_cast<std::size_t>(n_labels));
  for (int li = 0; li < n_labels; ++li) {
    SoundBankEntry entry;
    char name[32];
    std::snprintf(name, sizeof(name), "tone_%02d", li);
    entry.label = name;
    entry.description = entry.label + " sounding";
    const double base_f =
        n_labels > 1
            ? f_lo * std::pow(f_hi / f_lo,
                              static_cast<double>(li) / (n_labels - 1))
            : f_lo;
    const int family = li % 5;
    for (int ci = 0; ci < clips_per_label; ++ci) {
      const double f = base_f * (1.0 + 0.02 * (rng.uniform() - 0.5));
      const double am_rate = 2.0 + 4.0 * rng.uniform();
      AudioClip clip;
      clip.sample_rate_hz = sample_rate_hz;
      char cid[48];
      std::snprintf(cid, sizeof(cid), "%s_c%02d", entry.label.c_str(), ci);
      clip.id = cid;
      clip.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate_hz;
        double v = 0.0;
        switch (family) {
          case 0:  // pure tone
            v = std::sin(2.0 * kPi * f * t);
            break;
          case 1:  // upward chirp, f .. 1.5 f over the clip
            v = std::sin(2.0 * kPi * f * (t + 0.05 * t * t));
            break;
          case 2:  // square
            v = std::sin(2.0 * kPi * f * t) >= 0.0 ? 1.0 : -1.0;
            break;
          case 3:  // amplitude-modulated tone
            v = std::sin(2.0 * kPi * f * t) *
                (0.55 + 0.45 * std::sin(2.0 * kPi * am_rate * t));
            break;
          case 4:  // noise burst centred on f
            v = rng.normal() * 0.35 * std::sin(2.0 * kPi * f * t);
            break;
        }
        // 50 ms fade in/out keeps concatenation click-free.
        const double edge = 0.05;
        double env = 1.0;
        if (t < edge) env = t / edge;
        const double tail = dur - t;
        if (tail < edge) env = std::min(env, tail / edge);
        clip.samples[i] = v * env;
      }
      const double p = peak(clip.samples);
      if (p > 0.0) {
        const double g = 0.9 / p;
        for (double& s : clip.samples) s *= g;
      }
      entry.clips.push_back(std::move(clip));
    }
    bank.push_back(std::move(entry));
  }
  return bank;
}

std::vector<SoundBankEntry> load_esc50_bank(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  std::map<int, std::string> labels;
  std::ifstream csv(root / "labels.csv");
  if (!csv) throw AudioError("missing labels.csv in '" + dir + "'");
  std::string line;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    labels[std::stoi(line.substr(0, comma))] = line.substr(comma + 1);
  }
  std::map<int, SoundBankEntry> by_class;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.path().extension() == ".wav") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    // <fold>-<id>-<take>-<class>.wav
    const std::string stem = p.stem().string();
    auto dash = stem.rfind('-');
    if (dash == std::string::npos) continue;
    int cls = std::stoi(stem.substr(dash + 1));
    auto& entry = by_class[cls];
    if (entry.label.empty()) {
      auto it = labels.find(cls);
      entry.label = it != labels.end() ? it->second : "class_" + std::to_string(cls);
      entry.description = entry.label + " sounding";
    }
    entry.clips.push_back(read_wav(p.string()));
  }
  std::vector<SoundBankEntry> bank;
  for (auto& [cls, entry] : by_class) bank.push_back(std::move(entry));
  return bank;
}

AugmentationSpec AugmentationSpec::random(Rng& rng) {
  AugmentationSpec s;
  s.time_shift_s = rng.uniform(-0.5, 0.5);
  s.gain_db = rng.uniform(-6.0, 6.0);
  s.pitch_semitones = rng.uniform(-2.0, 2.0);
  s.stretch_factor = rng.uniform(0.9, 1.1);
  s.noise_snr_db = rng.uniform(20.0, 40.0);
  return s;
}

std::size_t augmented_length(std::size_t n_samples, const AugmentationSpec& spec) {
  if (spec.stretch_factor <= 0.0) {
    throw AudioError("stretch_factor must be positive");
  }
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(n_samples) * spec.stretch_factor));
}

AudioClip augment(const AudioClip& clip, const AugmentationSpec& spec,
                  std::uint64_t seed) {
  if (spec.stretch_factor <= 0.0) {
    throw AudioError("stretch_factor must be positive");
  }
  AudioClip out = clip;
  auto& x = out.samples;
  const std::size_t n = x.size();
  if (n == 0) return out;

  // Circular time shift.
  auto shift = static_cast<long long>(
                   std::llround(spec.time_shift_s * clip.sample_rate_hz)) %
               static_cast<long long>(n);
  if (shift < 0) shift += static_cast<long long>(n);
  if (shift != 0) {
    std::rotate(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n - shift),
                x.end());
  }

  // Gain.
  const double g = std::pow(10.0, spec.gain_db / 20.0);
  if (g != 1.0) {
    for (double& v : x) v *= g;
  }

  // Pitch shift: resample by 2^(semitones/12), then pad/trim back.
  if (spec.pitch_semitones != 0.0) {
    const double ratio = std::pow(2.0, spec.pitch_semitones / 12.0);
    auto n_fast = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) / ratio));
    x = resample(x, n_fast);
    x.resize(n, 0.0);
  }

  // Time stretch: plain resampling to duration * factor.
  if (spec.stretch_factor != 1.0) {
    x = resample(x, augmented_length(n, spec));
  }

  // Additive white noise at the requested SNR.
  if (std::isfinite(spec.noise_snr_db)) {
    double power = 0.0;
    for (double v : x) power += v * v;
    power /= static_cast<double>(x.size());
    if (power > 0.0) {
      const double noise_power = power / std::pow(10.0, spec.noise_snr_db / 10.0);
      const double sigma = std::sqrt(noise_power);
      Rng rng(seed);
      for (double& v : x) v += sigma * rng.normal();
    }
  }

  clip_in_place(x);
  return out;
}

std::pair<AudioClip, std::vector<SoundEvent>> compose_pair(
    const AudioClip& first, const AudioClip& second, double overlap_s,
    double target_s) {
  if (first.sample_rate_hz != second.sample_rate_hz) {
    throw AudioError("compose_pair: sample rate mismatch");
  }
  const int sr = first.sample_rate_hz;
  const auto n_target = static_cast<std::size_t>(std::llround(target_s * sr));
  const std::size_t n1 = first.samples.size();
  const std::size_t n2 = second.samples.size();
  const auto n_overlap = static_cast<std::size_t>(std::llround(overlap_s * sr));
  if (n_overlap > n1) throw AudioError("compose_pair: overlap exceeds first clip");
  const std::size_t start2 = n1 - n_overlap;
  if (start2 + n2 > n_target) {
    throw AudioError("compose_pair: combined length " +
                     std::to_string(static_cast<double>(start2 + n2) / sr) +
                     " s exceeds target " + std::to_string(target_s) + " s");
  }
  AudioClip out;
  out.sample_rate_hz = sr;
  out.samples.assign(n_target, 0.0);
  for (std::size_t i = 0; i < n1; ++i) out.samples[i] += first.samples[i];
  for (std::size_t i = 0; i < n2; ++i) out.samples[start2 + i] += second.samples[i];
  clip_in_place(out.samples);

  std::vector<SoundEvent> events(2);
  events[0] = {first.id, 0.0, static_cast<double>(n1) / sr};
  events[1] = {second.id, static_cast<double>(start2) / sr,
               static_cast<double>(start2 + n2) / sr};
  return {std::move(out), std::move(events)};
}

void fft_radix2(std::vector<std::complex<double>>& x, bool inverse) {
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw AudioError("fft_radix2: size must be a power of two");
  }
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        auto u = x[i + k];
        auto v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& v : x) v /= static_cast<double>(n);
  }
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

FrameFeatures features(const AudioClip& clip, double frame_s, int bands) {
  if (clip.duration_s() < frame_s) {
    throw AudioError("features: clip shorter than one frame");
  }
  const int sr = clip.sample_rate_hz;
  const auto frame_n = static_cast<std::size_t>(std::llround(frame_s * sr));
  const auto frames = static_cast<std::size_t>(
      std::ceil(clip.duration_s() / frame_s - 1e-9));
  std::size_t nfft = 1;
  while (nfft < frame_n) nfft <<= 1;

  FrameFeatures out;
  out.frame_s = frame_s;
  const double mel_hi = hz_to_mel(sr / 2.0);
  for (int b = 0; b <= bands; ++b) {
    out.band_edges_hz.push_back(mel_to_hz(mel_hi * b / bands));
  }

  std::vector<std::complex<double>> buf(nfft);
  for (std::size_t t = 0; t < frames; ++t) {
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    const std::size_t off = t * frame_n;
    const std::size_t avail = off < clip.samples.size()
                                  ? std::min(frame_n, clip.samples.size() - off)
                                  : 0;
    for (std::size_t i = 0; i < avail; ++i) buf[i] = clip.samples[off + i];
    fft_radix2(buf);

    std::vector<double> energy(static_cast<std::size_t>(bands), 0.0);
    for (std::size_t k = 0; k <= nfft / 2; ++k) {
      const double f = static_cast<double>(k) * sr / static_cast<double>(nfft);
      int b = 0;
      while (b + 1 < bands && f >= out.band_edges_hz[static_cast<std::size_t>(b) + 1]) {
        ++b;
      }
      energy[static_cast<std::size_t>(b)] += std::norm(buf[k]);
    }
    std::vector<double> row(static_cast<std::size_t>(bands));
    for (int b = 0; b < bands; ++b) {
      row[static_cast<std::size_t>(b)] =
          std::log(1e-8 + energy[static_cast<std::size_t>(b)]);
    }
    out.log_band_energy.push_back(std::move(row));
  }
  return out;
}

}  // namespace temporet
