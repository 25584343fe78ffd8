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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "temporet/corpus.hpp"
#include "temporet/cue.hpp"

using namespace temporet;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const CueLexicon& lex() {
  static CueLexicon l = CueLexicon::standard();
  return l;
}

}  // namespace

TEST_CASE("single-cue detection with clause extraction") {
  auto ann = detect_cues("Dog barking followed by rain falling", lex());
  REQUIRE(ann.cues.size() == 1);
  CHECK(ann.cues[0].cue == Cue::FollowedBy);
  CHECK(ann.cues[0].cls == CueClass::Future);
  CHECK(ann.cues[0].surface == "followed by");
  REQUIRE(ann.events_text_order.size() == 2);
  CHECK(ann.events_text_order[0] == "Dog barking");
  CHECK(ann.events_text_order[1] == "rain falling");
}

TEST_CASE("detection is case-insensitive and keeps the original surface") {
  auto ann = detect_cues("Dog barks AFTER a cat meows", lex());
  REQUIRE(ann.cues.size() == 1);
  CHECK(ann.cues[0].cue == Cue::After);
  CHECK(ann.cues[0].surface == "AFTER");
}

TEST_CASE("word boundaries prevent substring matches") {
  CHECK(detect_cues("The band played on", lex()).cues.empty());
  CHECK(detect_cues("Thereafter silence fell", lex()).cues.empty());
  CHECK(detect_cues("A sandstorm brews", lex()).cues.empty());
  CHECK(detect_cues("Masking tape rips", lex()).cues.empty());
}

TEST_CASE("longest match wins") {
  auto ann = detect_cues("a thud preceded by a click", lex());
  REQUIRE(ann.cues.size() == 1);
  CHECK(ann.cues[0].cue == Cue::PrecededBy);

  // Alternate spelling maps to the same cue.
  auto alt = detect_cues("a thud proceeded by a click", lex());
  REQUIRE(alt.cues.size() == 1);
  CHECK(alt.cues[0].cue == Cue::PrecededBy);
  CHECK(alt.cues[0].cls == CueClass::Past);
}

TEST_CASE("multiple cues are all reported in text order") {
  auto ann = detect_cues("Wind blows and rain falls while thunder rumbles", lex());
  REQUIRE(ann.cues.size() == 2);
  CHECK(ann.cues[0].cue == Cue::And);
  CHECK(ann.cues[1].cue == Cue::While);
  CHECK(ann.events_text_order.empty());  // no unique directional cue
}

TEST_CASE("before reclassification flag") {
  auto future = detect_cues("Birds chirp before a door slams",
                            CueLexicon::standard(false));
  REQUIRE(future.cues.size() == 1);
  CHECK(future.cues[0].cls == CueClass::Future);

  auto past = detect_cues("Birds chirp before a door slams",
                          CueLexicon::standard(true));
  REQUIRE(past.cues.size() == 1);
  CHECK(past.cues[0].cls == CueClass::Past);
}

TEST_CASE("semantic_order follows the cue class") {
  auto fut = semantic_order(detect_cues("A then B", lex()));
  REQUIRE(fut.has_value());
  CHECK(fut->first == "A");
  CHECK(fut->second == "B");

  auto past = semantic_order(detect_cues("A after B", lex()));
  REQUIRE(past.has_value());
  CHECK(past->first == "B");
  CHECK(past->second == "A");

  CHECK_FALSE(semantic_order(detect_cues("A while B", lex())).has_value());
  CHECK_FALSE(semantic_order(detect_cues("plain caption", lex())).has_value());
  CHECK_FALSE(
      semantic_order(detect_cues("A then B then C", lex())).has_value());
}

TEST_CASE("before reclassification flips semantic_order") {
  auto fut = semantic_order(
      detect_cues("A before B", CueLexicon::standard(false)));
  REQUIRE(fut.has_value());
  CHECK(fut->first == "A");
  auto past =
      semantic_order(detect_cues("A before B", CueLexicon::standard(true)));
  REQUIRE(past.has_value());
  CHECK(past->first == "B");
}

TEST_CASE("clause extraction trims punctuation") {
  auto ann = detect_cues("A dog barks, then a man shouts.", lex());
  REQUIRE(ann.events_text_order.size() == 2);
  CHECK(ann.events_text_order[0] == "A dog barks");
  CHECK(ann.events_text_order[1] == "a man shouts");
}

TEST_CASE("fixture histogram matches the hand annotation") {
  DatasetManifest m =
      load_manifest(std::string(TEMPORET_FIXTURE_DIR) + "/captions20.jsonl");
  CueHistogram h = histogram(m, lex());
  CHECK(h.total_captions == 20);
  CHECK(h.total_temporal_captions == 18);
  CHECK(h.counts.at(Cue::FollowedBy) == 3);
  CHECK(h.counts.at(Cue::Then) == 4);
  CHECK(h.counts.at(Cue::Before) == 2);
  CHECK(h.counts.at(Cue::After) == 2);
  CHECK(h.counts.at(Cue::PrecededBy) == 2);
  CHECK(h.counts.at(Cue::As) == 2);
  CHECK(h.counts.at(Cue::While) == 2);
  CHECK(h.counts.at(Cue::During) == 1);
  CHECK(h.counts.at(Cue::And) == 4);
  CHECK(histogram_csv(h, lex()) ==
        read_file(std::string(TEMPORET_FIXTURE_DIR) + "/captions20_hist.csv"));
}

TEST_CASE("histogram accumulation equals whole-corpus histogram") {
  DatasetManifest m =
      load_manifest(std::string(TEMPORET_FIXTURE_DIR) + "/captions20.jsonl");
  DatasetManifest first_half, second_half;
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    (i < m.records.size() / 2 ? first_half : second_half)
        .records.push_back(m.records[i]);
  }
  CueHistogram sum = histogram(first_half, lex());
  sum += histogram(second_half, lex());
  CueHistogram whole = histogram(m, lex());
  CHECK(sum.counts == whole.counts);
  CHECK(sum.total_captions == whole.total_captions);
  CHECK(sum.total_temporal_captions == whole.total_temporal_captions);
  CHECK(histogram_csv(sum, lex()) == histogram_csv(whole, lex()));
}
