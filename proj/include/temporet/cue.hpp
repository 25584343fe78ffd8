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

#ifndef TEMPORET_CUE_HPP
#define TEMPORET_CUE_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "temporet/corpus.hpp"

namespace temporet {

struct CueLexiconEntry {
  std::string surface;  // lowercase; may be multiword
  Cue cue;
  CueClass cls;
};

/// Surface-form lexicon. Entries are matched longest-first so that
/// "followed by" wins over a hypothetical "by" and "preceded by" over
/// "before"-like prefixes.
class CueLexicon {
 public:
  /// Default lexicon. "before" is classified future; pass
  /// before_is_past=true to reclassify it.
  static CueLexicon standard(bool before_is_past = false);

  const std::vector<CueLexiconEntry>& entries() const { return entries_; }

  CueClass classify(Cue c) const;

 private:
  std::vector<CueLexiconEntry> entries_;  // sorted: more words first, then longer
  std::map<Cue, CueClass> class_of_;
};

/// Case-insensitive, word-boundary, longest-match-first cue detection with
/// clause extraction around the first directional cue.
CaptionAnnotation detect_cues(const std::string& text, const CueLexicon& lex);

/// Acoustic (semantic) order of the two events, or nullopt for joint-only,
/// cue-free, or multi-cue captions.
std::optional<std::pair<std::string, std::string>> semantic_order(
    const CaptionAnnotation& c);

struct CueHistogram {
  std::map<Cue, long> counts;     // every cue occurrence, all captions
  long total_captions = 0;
  long total_temporal_captions = 0;  // captions with >= 1 cue
  std::map<std::string, std::map<Cue, long>> per_split;

  CueHistogram& operator+=(const CueHistogram& other);
};

CueHistogram histogram(const DatasetManifest& m, const CueLexicon& lex);

/// CSV rows: cue,class,count,percent (percent of total captions).
std::string histogram_csv(const CueHistogram& h, const CueLexicon& lex);

}  // namespace temporet

#endif  // TEMPORET_CUE_HPP
