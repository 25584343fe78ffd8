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

#ifndef TEMPORET_AUDIO_HPP
#define TEMPORET_AUDIO_HPP

#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "temporet/corpus.hpp"
#include "temporet/rng.hpp"

namespace temporet {

class AudioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- WAV I/O (PCM 16-bit mono) ----

AudioClip read_wav(const std::string& path);
void write_wav(const AudioClip& clip, const std::string& path);

// ---- Synthetic sound bank ----

struct SoundBankEntry {
  std::string label;
  std::string description;  // caption fragment, e.g. "tone_07 sounding"
  std::vector<AudioClip> clips;
};

/// Parametric bank of atomic 5 s sounds. Timbre families (sine, chirp,
/// square, AM tone, noise burst) are cycled over labels; each label gets
/// its own fundamental so band-energy argmaxes differ across labels.
std::vector<SoundBankEntry> synth_bank(int n_labels, int clips_per_label,
                                       int sample_rate_hz, std::uint64_t seed);

/// ESC-50-style ingestion: WAV files named <fold>-<id>-<take>-<class>.wav
/// plus a CSV mapping class index to label name ("index,label" per line).
std::vector<SoundBankEntry> load_esc50_bank(const std::string& dir);

// ---- Augmentation ----

struct AugmentationSpec {
  double time_shift_s = 0.0;
  double gain_db = 0.0;
  double pitch_semitones = 0.0;
  double stretch_factor = 1.0;
  double noise_snr_db = std::numeric_limits<double>::infinity();

  static AugmentationSpec identity() { return {}; }

  /// Draws from the default ranges: shift [-0.5,0.5] s, gain [-6,6] dB,
  /// pitch [-2,2] semitones, stretch [0.9,1.1], SNR [20,40] dB.
  static AugmentationSpec random(Rng& rng);
};

AudioClip augment(const AudioClip& clip, const AugmentationSpec& spec,
                  std::uint64_t seed);

/// Number of samples an augmented clip will have, without synthesizing it.
std::size_t augmented_length(std::size_t n_samples, const AugmentationSpec& spec);

// ---- Composition ----

/// Concatenates two clips with the given overlap (seconds), summing where
/// they overlap, padded/trimmed to exactly target_s. Returns the composite
/// and the two ground-truth event intervals.
std::pair<AudioClip, std::vector<SoundEvent>> compose_pair(
    const AudioClip& first, const AudioClip& second, double overlap_s,
    double target_s = 10.0);

// ---- Features ----

struct FrameFeatures {
  std::vector<std::vector<double>> log_band_energy;  // T x B
  double frame_s = 0.5;
  std::vector<double> band_edges_hz;  // B + 1 mel-spaced edges
};

/// In-place radix-2 complex FFT; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& x, bool inverse = false);

/// Per-frame log band energies: frames of frame_s seconds, zero-padded to
/// the next power of two, energies summed inside B mel-spaced bands,
/// log(1e-8 + energy).
FrameFeatures features(const AudioClip& clip, double frame_s = 0.5,
                       int bands = 8);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

}  // namespace temporet

#endif  // TEMPORET_AUDIO_HPP
