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

#include "temporet/transform.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace temporet {

namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

void require_applicable(const CaptionAnnotation& c) {
  if (!c.single_directional_cue() || c.events_text_order.size() != 2) {
    throw TransformError("transform not applicable to caption: '" + c.text +
                         "' (needs exactly one future/past cue and two clauses)");
  }
}

bool caption_applicable(const CaptionAnnotation& c) {
  return c.single_directional_cue() && c.events_text_order.size() == 2;
}

/// Same-class replacement used for positives and uniformize.
Cue same_class_synonym(Cue c) {
  switch (c) {
    case Cue::FollowedBy: return Cue::Before;
    case Cue::Then: return Cue::Before;
    case Cue::Before: return Cue::FollowedBy;
    case Cue::After: return Cue::PrecededBy;
    case Cue::PrecededBy: return Cue::After;
    default: throw TransformError("no synonym for joint cue " + cue_name(c));
  }
}

std::string join_caption(const std::string& first, Cue cue,
                         const std::string& second) {
  return sentence_case(first + " " + cue_surface(cue) + " " + second);
}

}  // namespace

std::string sentence_case(const std::string& s) {
  std::string out = lower(s);
  for (char& c : out) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
    }
  }
  return out;
}

RepMap RepMap::standard(Mode mode) {
  RepMap m;
  m.mode = mode;
  m.mapping = {
      {Cue::After, Cue::Before},
      {Cue::Before, Cue::After},
      {Cue::Then, mode == Mode::PaperCompat ? Cue::Before : Cue::After},
      {Cue::FollowedBy, Cue::PrecededBy},
      {Cue::PrecededBy, Cue::FollowedBy},
  };
  return m;
}

CaptionAnnotation rev(const CaptionAnnotation& c, const CueLexicon& lex) {
  require_applicable(c);
  const std::string text =
      sentence_case(c.events_text_order[1] + " " + lower(c.cues[0].surface) +
                    " " + c.events_text_order[0]);
  return detect_cues(text, lex);
}

CaptionAnnotation rep(const CaptionAnnotation& c, const RepMap& map,
                      const CueLexicon& lex) {
  require_applicable(c);
  auto it = map.mapping.find(c.cues[0].cue);
  if (it == map.mapping.end()) {
    throw TransformError("rep not applicable: cue " + cue_name(c.cues[0].cue) +
                         " is not in the replacement map");
  }
  std::string text = c.text.substr(0, c.cues[0].begin) + cue_surface(it->second) +
                     c.text.substr(c.cues[0].end);
  return detect_cues(sentence_case(text), lex);
}

ContrastiveTextSet make_contrastive_set(const CaptionAnnotation& c,
                                        const CueLexicon& lex) {
  require_applicable(c);
  const Cue anchor_cue = c.cues[0].cue;
  const bool future = c.cues[0].cls == CueClass::Future;
  const std::string& first = c.events_text_order[0];
  const std::string& second = c.events_text_order[1];
  // Flipping the clause order needs a cue of the opposite class to keep
  // (or, for negatives, reverse) the meaning; After/Before are the
  // single-word representatives of each class.
  const Cue opposite_cue = future ? Cue::After : Cue::Before;

  ContrastiveTextSet set;
  set.anchor = c;
  set.positives = {
      join_caption(first, same_class_synonym(anchor_cue), second),
      join_caption(second, opposite_cue, first),
  };
  set.negatives = {
      join_caption(first, opposite_cue, second),
      join_caption(second, anchor_cue, first),
  };
  const std::string anchor_l = lower(c.text);
  for (const auto& t : {set.positives[0], set.positives[1], set.negatives[0],
                        set.negatives[1]}) {
    if (lower(t) == anchor_l) {
      throw TransformError("contrastive rewrite collides with anchor: '" +
                           c.text + "'");
    }
  }
  (void)lex;
  return set;
}

DatasetManifest uniformize(const DatasetManifest& manifest, const CueLexicon& lex,
                           std::uint64_t seed) {
  DatasetManifest out = manifest;
  std::map<Cue, long> counts;
  for (Cue c : kDirectionalCues) counts[c] = 0;

  // Seeded traversal order: greedy assignment is order-dependent.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t ri = 0; ri < out.records.size(); ++ri) {
    for (std::size_t ci = 0; ci < out.records[ri].captions.size(); ++ci) {
      slots.emplace_back(ri, ci);
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = slots.size(); i > 1; --i) {
    std::swap(slots[i - 1], slots[rng() % i]);
  }

  bool changed_any = false;
  for (auto [ri, ci] : slots) {
    auto& record = out.records[ri];
    auto ann = detect_cues(record.captions[ci], lex);
    if (!caption_applicable(ann)) continue;
    Cue best = kDirectionalCues[0];
    for (Cue cand : kDirectionalCues) {
      if (counts[cand] < counts[best]) best = cand;
    }
    ++counts[best];
    const bool same_class = lex.classify(best) == ann.cues[0].cls;
    std::string text;
    if (same_class) {
      text = sentence_case(ann.text.substr(0, ann.cues[0].begin) +
                           cue_surface(best) + ann.text.substr(ann.cues[0].end));
    } else {
      text = join_caption(ann.events_text_order[1], best,
                          ann.events_text_order[0]);
    }
    if (lower(text) != lower(record.captions[ci])) {
      record.captions[ci] = text;
      record.meta["transform"] = "uni";
      changed_any = true;
    }
  }
  (void)changed_any;
  return out;
}

DatasetManifest transform_manifest(const DatasetManifest& manifest,
                                   const std::string& mode, const RepMap& map,
                                   const CueLexicon& lex) {
  if (mode == "uni") return uniformize(manifest, lex, 0);
  if (mode != "rev" && mode != "rep") {
    throw TransformError("unknown transform mode '" + mode + "'");
  }
  DatasetManifest out;
  for (const auto& record : manifest.records) {
    ManifestRecord r = record;
    bool any = false;
    for (auto& caption : r.captions) {
      auto ann = detect_cues(caption, lex);
      if (!caption_applicable(ann)) continue;
      if (mode == "rep" && map.mapping.find(ann.cues[0].cue) == map.mapping.end()) {
        continue;
      }
      caption = mode == "rev" ? rev(ann, lex).text : rep(ann, map, lex).text;
      any = true;
    }
    if (!any) continue;
    r.meta["transform"] = mode;
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace temporet
