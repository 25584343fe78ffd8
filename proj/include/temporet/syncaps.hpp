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

#ifndef TEMPORET_SYNCAPS_HPP
#define TEMPORET_SYNCAPS_HPP

#include <array>
#include <string>
#include <vector>

#include "temporet/audio.hpp"
#include "temporet/corpus.hpp"

namespace temporet {

class SyncapsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SyncapsSizes {
  int train = 4400;
  int val = 485;
  int test = 485;
};

/// Rule-based caption: future cue keeps the acoustic order in text, past
/// cue swaps the clause positions. semantic_order of the result is always
/// (first_desc, second_desc).
std::string caption_for(const std::string& first_desc,
                        const std::string& second_desc, Cue cue);

/// Generates a paired audio-caption manifest over the bank. Records carry
/// a synthesis recipe in meta instead of audio files; materialize_record
/// rebuilds the waveform deterministically. Test records draw only from
/// clips reserved exclusively for the test split.
DatasetManifest generate(const std::vector<SoundBankEntry>& bank,
                         const SyncapsSizes& sizes, double reuse_avg,
                         std::uint64_t seed, double target_s = 10.0);

/// Rebuilds the composite clip for a generated record from its recipe.
AudioClip materialize_record(const ManifestRecord& record,
                             const std::vector<SoundBankEntry>& bank);

}  // namespace temporet

#endif  // TEMPORET_SYNCAPS_HPP
