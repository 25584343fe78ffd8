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

#include "temporet/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace temporet {

using ordered_json = nlohmann::ordered_json;

std::string cue_name(Cue c) {
  switch (c) {
    case Cue::FollowedBy: return "FOLLOWED_BY";
    case Cue::Then: return "THEN";
    case Cue::Before: return "BEFORE";
    case Cue::After: return "AFTER";
    case Cue::PrecededBy: return "PRECEDED_BY";
    case Cue::As: return "AS";
    case Cue::While: return "WHILE";
    case Cue::During: return "DURING";
    case Cue::And: return "AND";
  }
  return "?";
}

std::string cue_surface(Cue c) {
  switch (c) {
    case Cue::FollowedBy: return "followed by";
    case Cue::Then: return "then";
    case Cue::Before: return "before";
    case Cue::After: return "after";
    case Cue::PrecededBy: return "preceded by";
    case Cue::As: return "as";
    case Cue::While: return "while";
    case Cue::During: return "during";
    case Cue::And: return "and";
  }
  return "?";
}

std::string cue_class_name(CueClass c) {
  switch (c) {
    case CueClass::Future: return "future";
    case CueClass::Past: return "past";
    case CueClass::Joint: return "joint";
  }
  return "?";
}

namespace {

ordered_json record_to_json(const ManifestRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  if (!r.audio_path.empty()) j["audio"] = r.audio_path;
  j["split"] = r.split;
  j["captions"] = r.captions;
  if (!r.events.empty()) {
    ordered_json evs = ordered_json::array();
    for (const auto& e : r.events) {
      ordered_json ev;
      ev["label"] = e.label;
      ev["onset"] = e.onset_s;
      ev["offset"] = e.offset_s;
      evs.push_back(ev);
    }
    j["events"] = evs;
  }
  if (!r.meta.empty()) {
    ordered_json meta;
    for (const auto& [k, v] : r.meta) meta[k] = v;  // std::map keeps keys sorted
    j["meta"] = meta;
  }
  return j;
}

ManifestRecord record_from_json(const ordered_json& j, int line_no) {
  ManifestRecord r;
  auto require = [&](const char* key) {
    if (!j.contains(key)) {
      throw ManifestError("line " + std::to_string(line_no) +
                          ": missing field '" + key + "'");
    }
  };
  require("id");
  require("split");
  require("captions");
  r.id = j.at("id").get<std::string>();
  r.split = j.at("split").get<std::string>();
  if (j.contains("audio")) r.audio_path = j.at("audio").get<std::string>();
  for (const auto& c : j.at("captions")) r.captions.push_back(c.get<std::string>());
  if (j.contains("events")) {
    for (const auto& ev : j.at("events")) {
      SoundEvent e;
      e.label = ev.at("label").get<std::string>();
      e.onset_s = ev.at("onset").get<double>();
      e.offset_s = ev.at("offset").get<double>();
      r.events.push_back(e);
    }
  }
  if (j.contains("meta")) {
    for (auto it = j.at("meta").begin(); it != j.at("meta").end(); ++it) {
      r.meta[it.key()] = it.value().get<std::string>();
    }
  }
  return r;
}

}  // namespace

void validate_manifest(const DatasetManifest& m) {
  std::set<std::string> seen;
  for (const auto& r : m.records) {
    if (!seen.insert(r.id).second) {
      throw ManifestError("duplicate record id '" + r.id + "'");
    }
    if (r.captions.empty()) {
      throw ManifestError("record '" + r.id + "': field 'captions' is empty");
    }
    if (r.split != "train" && r.split != "val" && r.split != "test") {
      throw ManifestError("record '" + r.id + "': field 'split' has invalid value '" +
                          r.split + "'");
    }
  }
}

DatasetManifest parse_manifest(const std::string& jsonl) {
  DatasetManifest m;
  std::istringstream in(jsonl);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const std::exception& e) {
      throw ManifestError("line " + std::to_string(line_no) + ": " + e.what());
    }
    m.records.push_back(record_from_json(j, line_no));
  }
  validate_manifest(m);
  return m;
}

std::string serialize_manifest(const DatasetManifest& m) {
  std::string out;
  for (const auto& r : m.records) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot open manifest '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

void save_manifest(const DatasetManifest& m, const std::string& path) {
  validate_manifest(m);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ManifestError("cannot write manifest '" + path + "'");
  out << serialize_manifest(m);
  if (!out) throw ManifestError("I/O failure writing '" + path + "'");
}

}  // namespace temporet
