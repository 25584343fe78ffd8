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

#ifndef TEMPORET_CORPUS_HPP
#define TEMPORET_CORPUS_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace temporet {

/// Mono waveform. Samples are kept in [-1, 1]; anything that could push
/// them outside (mixing, augmentation) clips afterwards.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate_hz = 16000;
  std::string id;

  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// A single grounded sound occurrence inside a clip.
struct SoundEvent {
  std::string label;
  double onset_s = 0.0;
  double offset_s = 0.0;
};

/// Canonical temporal cues.
enum class Cue {
  FollowedBy,
  Then,
  Before,
  After,
  PrecededBy,
  As,
  While,
  During,
  And,
};

enum class CueClass { Future, Past, Joint };

inline constexpr Cue kOrderedCues[] = {
    Cue::FollowedBy, Cue::Then,  Cue::Before, Cue::After, Cue::PrecededBy,
    Cue::As,         Cue::While, Cue::During, Cue::And,
};

/// The five cues that fix the acoustic order of two events.
inline constexpr Cue kDirectionalCues[] = {
    Cue::FollowedBy, Cue::Then, Cue::Before, Cue::After, Cue::PrecededBy,
};

std::string cue_name(Cue c);
std::string cue_surface(Cue c);  // canonical lowercase surface form
std::string cue_class_name(CueClass c);

/// One detected cue occurrence in a caption.
struct CueMatch {
  std::string surface;  // as matched in the text (original case)
  Cue cue;
  CueClass cls;
  std::size_t begin = 0;  // byte offsets into the caption text
  std::size_t end = 0;
};

/// Caption text plus detected cues and the event clauses in text order.
struct CaptionAnnotation {
  std::string text;
  std::vector<CueMatch> cues;
  std::vector<std::string> events_text_order;

  /// True when the caption has exactly one cue and it is future/past.
  bool single_directional_cue() const {
    return cues.size() == 1 && cues[0].cls != CueClass::Joint;
  }
};

struct ManifestRecord {
  std::string id;
  std::string audio_path;  // empty when the record carries a synthesis recipe
  std::string split;       // train | val | test
  std::vector<std::string> captions;
  std::vector<SoundEvent> events;
  std::map<std::string, std::string> meta;
};

struct DatasetManifest {
  std::vector<ManifestRecord> records;
};

/// Loss hyperparameters (temperature, text-text weight, hinge margin).
struct LossConfig {
  double tau = 0.07;
  double lambda = 10.0;
  double margin = 0.2;
};

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a JSON Lines manifest. Throws ManifestError with the offending
/// line number on parse failures and with the duplicated id on id clashes.
DatasetManifest load_manifest(const std::string& path);

/// Deterministic serialization: records in order, keys in fixed order.
void save_manifest(const DatasetManifest& m, const std::string& path);

/// In-memory variants used by tests and the bindings.
DatasetManifest parse_manifest(const std::string& jsonl);
std::string serialize_manifest(const DatasetManifest& m);

void validate_manifest(const DatasetManifest& m);

}  // namespace temporet

#endif  // TEMPORET_CORPUS_HPP
