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

#include "temporet/cue.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace temporet {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '\'';
}

std::string to_lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

int word_count(const std::string& s) {
  return 1 + static_cast<int>(std::count(s.begin(), s.end(), ' '));
}

std::string trim_clause(std::string s) {
  auto edge = [](char c) { return is_word_char(c) || c == '-'; };
  std::size_t b = 0;
  while (b < s.size() && !edge(s[b])) ++b;
  std::size_t e = s.size();
  while (e > b && !edge(s[e - 1])) --e;
  return s.substr(b, e - b);
}

}  // namespace

CueLexicon CueLexicon::standard(bool before_is_past) {
  CueLexicon lex;
  CueClass before_cls = before_is_past ? CueClass::Past : CueClass::Future;
  lex.entries_ = {
      {"followed by", Cue::FollowedBy, CueClass::Future},
      {"preceded by", Cue::PrecededBy, CueClass::Past},
      // Alternate spelling seen in the wild.
      {"proceeded by", Cue::PrecededBy, CueClass::Past},
      {"then", Cue::Then, CueClass::Future},
      {"before", Cue::Before, before_cls},
      {"after", Cue::After, CueClass::Past},
      {"as", Cue::As, CueClass::Joint},
      {"while", Cue::While, CueClass::Joint},
      {"during", Cue::During, CueClass::Joint},
      {"and", Cue::And, CueClass::Joint},
  };
  std::stable_sort(lex.entries_.begin(), lex.entries_.end(),
                   [](const CueLexiconEntry& a, const CueLexiconEntry& b) {
                     int wa = word_count(a.surface), wb = word_count(b.surface);
                     if (wa != wb) return wa > wb;
                     return a.surface.size() > b.surface.size();
                   });
  for (const auto& e : lex.entries_) {
    lex.class_of_.emplace(e.cue, e.cls);
  }
  return lex;
}

CueClass CueLexicon::classify(Cue c) const {
  auto it = class_of_.find(c);
  if (it == class_of_.end()) {
    throw std::invalid_argument("cue not in lexicon: " + cue_name(c));
  }
  return it->second;
}

CaptionAnnotation detect_cues(const std::string& text, const CueLexicon& lex) {
  CaptionAnnotation out;
  out.text = text;
  const std::string lower = to_lower(text);
  std::size_t i = 0;
  while (i < lower.size()) {
    if (is_word_char(lower[i]) && (i == 0 || !is_word_char(lower[i - 1]))) {
      const CueLexiconEntry* hit = nullptr;
      for (const auto& e : lex.entries()) {
        const std::size_t n = e.surface.size();
        if (lower.compare(i, n, e.surface) != 0) continue;
        if (i + n < lower.size() && is_word_char(lower[i + n])) continue;
        hit = &e;
        break;  // entries are longest-first
      }
      if (hit) {
        CueMatch m;
        m.surface = text.substr(i, hit->surface.size());
        m.cue = hit->cue;
        m.cls = hit->cls;
        m.begin = i;
        m.end = i + hit->surface.size();
        out.cues.push_back(m);
        i = m.end;
        continue;
      }
      while (i < lower.size() && is_word_char(lower[i])) ++i;
      continue;
    }
    ++i;
  }

  // Clause split around the first directional cue, when it is unique.
  const CueMatch* directional = nullptr;
  int n_directional = 0;
  for (const auto& m : out.cues) {
    if (m.cls != CueClass::Joint) {
      ++n_directional;
      if (!directional) directional = &m;
    }
  }
  if (n_directional == 1) {
    std::string first = trim_clause(text.substr(0, directional->begin));
    std::string second = trim_clause(text.substr(directional->end));
    if (!first.empty() && !second.empty()) {
      out.events_text_order = {first, second};
    }
  }
  return out;
}

std::optional<std::pair<std::string, std::string>> semantic_order(
    const CaptionAnnotation& c) {
  if (!c.single_directional_cue() || c.events_text_order.size() != 2) {
    return std::nullopt;
  }
  const auto& a = c.events_text_order[0];
  const auto& b = c.events_text_order[1];
  if (c.cues[0].cls == CueClass::Future) return std::make_pair(a, b);
  return std::make_pair(b, a);
}

CueHistogram& CueHistogram::operator+=(const CueHistogram& other) {
  for (const auto& [cue, n] : other.counts) counts[cue] += n;
  total_captions += other.total_captions;
  total_temporal_captions += other.total_temporal_captions;
  for (const auto& [split, m] : other.per_split) {
    for (const auto& [cue, n] : m) per_split[split][cue] += n;
  }
  return *this;
}

CueHistogram histogram(const DatasetManifest& m, const CueLexicon& lex) {
  CueHistogram h;
  for (Cue c : kOrderedCues) h.counts[c] = 0;
  for (const auto& rec : m.records) {
    for (const auto& caption : rec.captions) {
      ++h.total_captions;
      auto ann = detect_cues(caption, lex);
      if (!ann.cues.empty()) ++h.total_temporal_captions;
      for (const auto& cm : ann.cues) {
        ++h.counts[cm.cue];
        ++h.per_split[rec.split][cm.cue];
      }
    }
  }
  return h;
}

std::string histogram_csv(const CueHistogram& h, const CueLexicon& lex) {
  std::ostringstream out;
  out << "cue,class,count,percent\n";
  for (Cue c : kOrderedCues) {
    long n = 0;
    if (auto it = h.counts.find(c); it != h.counts.end()) n = it->second;
    double pct = h.total_captions > 0
                     ? 100.0 * static_cast<double>(n) / h.total_captions
                     : 0.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", pct);
    out << cue_name(c) << ',' << cue_class_name(lex.classify(c)) << ',' << n
        << ',' << buf << '\n';
  }
  out << "TOTAL_CAPTIONS,," << h.total_captions << ",\n";
  out << "TEMPORAL_CAPTIONS,," << h.total_temporal_captions << ",\n";
  return out.str();
}

}  // namespace temporet
