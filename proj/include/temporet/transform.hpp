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

#ifndef TEMPORET_TRANSFORM_HPP
#define TEMPORET_TRANSFORM_HPP

#include <map>
#include <string>
#include <vector>

#include "temporet/corpus.hpp"
#include "temporet/cue.hpp"

namespace temporet {

class TransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cue replacement table for the rep transform.
struct RepMap {
  enum class Mode { PaperCompat, Corrected };

  std::map<Cue, Cue> mapping;
  Mode mode = Mode::PaperCompat;

  /// PaperCompat: after<->before, then->before, followed by<->preceded by.
  /// Corrected: identical except then->after, so that every mapped cue
  /// flips the acoustic order.
  static RepMap standard(Mode mode);
};

/// Swap the textual positions of the two event clauses, keep the cue.
CaptionAnnotation rev(const CaptionAnnotation& c, const CueLexicon& lex);

/// Replace the cue with its mapped opposite, keep clause positions.
CaptionAnnotation rep(const CaptionAnnotation& c, const RepMap& map,
                      const CueLexicon& lex);

/// Anchor plus two same-order and two opposite-order rewrites.
struct ContrastiveTextSet {
  CaptionAnnotation anchor;
  std::vector<std::string> positives;  // size 2
  std::vector<std::string> negatives;  // size 2
};

ContrastiveTextSet make_contrastive_set(const CaptionAnnotation& c,
                                        const CueLexicon& lex);

/// Rewrites single-cue directional captions so the five directional cues
/// end up as evenly used as the corpus allows. Greedy: each caption takes
/// the globally least-frequent admissible cue. Acoustic order is never
/// changed. Joint-cue and cue-free captions pass through untouched.
DatasetManifest uniformize(const DatasetManifest& manifest, const CueLexicon& lex,
                           std::uint64_t seed);

/// Applies rev or rep to every applicable caption of a manifest; records
/// where nothing applies are dropped. mode is "rev" or "rep".
DatasetManifest transform_manifest(const DatasetManifest& manifest,
                                   const std::string& mode, const RepMap& map,
                                   const CueLexicon& lex);

/// Sentence case: everything lowered, first letter capitalized.
std::string sentence_case(const std::string& s);

}  // namespace temporet

#endif  // TEMPORET_TRANSFORM_HPP
