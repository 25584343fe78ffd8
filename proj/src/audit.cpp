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

#include "temporet/audit.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace temporet {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void replace_placeholder(std::string& text, const std::string& key,
                         const std::string& value) {
  const std::string needle = "{" + key + "}";
  auto pos = text.find(needle);
  if (pos == std::string::npos) {
    throw AuditError("prompt template is missing the " + needle + " placeholder");
  }
  while (pos != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos = text.find(needle, pos + value.size());
  }
}

}  // namespace

std::string verdict_label_name(AuditVerdict::Label label) {
  switch (label) {
    case AuditVerdict::Label::Correct: return "Correct";
    case AuditVerdict::Label::Incomplete: return "Incomplete";
    case AuditVerdict::Label::Wrong: return "Wrong";
    case AuditVerdict::Label::Unparsed: return "Unparsed";
  }
  return "?";
}

std::string format_component_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", t);
  std::string s = buf;
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') {
    s.pop_back();
  }
  return s;
}

std::string build_prompt(const GroundedItem& item, const std::string& tmpl) {
  if (item.components.empty()) {
    throw AuditError("grounded item has no components");
  }
  std::string components;
  for (const auto& c : item.components) {
    components += c.label + ": " + format_component_time(c.onset_s) + ", " +
                  format_component_time(c.offset_s) + ";\n";
  }
  if (!components.empty()) components.pop_back();  // drop trailing newline
  std::string out = tmpl;
  replace_placeholder(out, "description", item.description);
  replace_placeholder(out, "components", components);
  return out;
}

AuditVerdict parse_verdict(const std::string& response) {
  AuditVerdict v;
  v.raw_response = response;
  std::istringstream in(response);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.rfind("Evaluation:", 0) == 0) {
      const std::string label = lower(trim(t.substr(11)));
      if (label == "correct") v.label = AuditVerdict::Label::Correct;
      else if (label == "incomplete") v.label = AuditVerdict::Label::Incomplete;
      else if (label == "wrong") v.label = AuditVerdict::Label::Wrong;
    } else if (t.rfind("Corrected description:", 0) == 0) {
      v.corrected_description = trim(t.substr(22));
    }
  }
  return v;
}

AuditVerdict mock_audit(const GroundedItem& item) {
  if (item.components.empty()) {
    throw AuditError("grounded item has no components");
  }
  const std::string desc = lower(item.description);

  std::vector<const SoundEvent*> by_onset;
  for (const auto& c : item.components) by_onset.push_back(&c);
  std::stable_sort(by_onset.begin(), by_onset.end(),
                   [](const SoundEvent* a, const SoundEvent* b) {
                     return a->onset_s < b->onset_s;
                   });

  bool all_present = true;
  bool in_order = true;
  std::size_t last_pos = 0;
  bool first = true;
  for (const auto* c : by_onset) {
    const auto pos = desc.find(lower(c->label));
    if (pos == std::string::npos) {
      all_present = false;
      break;
    }
    if (!first && pos < last_pos) in_order = false;
    last_pos = pos;
    first = false;
  }

  std::string response;
  if (all_present && in_order) {
    response = "Evaluation: Correct";
  } else {
    std::string corrected;
    for (std::size_t i = 0; i < by_onset.size(); ++i) {
      if (i) corrected += " followed by ";
      corrected += by_onset[i]->label;
    }
    response = all_present ? "Evaluation: Wrong" : "Evaluation: Incomplete";
    response += "\nCorrected description: " + corrected;
  }
  return parse_verdict(response);
}

namespace {

AuditVerdict http_audit(const GroundedItem& item, const AuditBackendConfig& cfg) {
  const char* url_env = std::getenv("AUDIT_API_URL");
  if (!url_env || !*url_env) {
    throw AuditError("AUDIT_API_URL is not set");
  }
  const char* key_env = std::getenv("AUDIT_API_KEY");
  const std::string url = url_env;
  // split scheme://host[:port] from path
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw AuditError("malformed AUDIT_API_URL");
  auto path_start = url.find('/', scheme_end + 3);
  const std::string base =
      path_start == std::string::npos ? url : url.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/" : url.substr(path_start);

  ordered_json req;
  req["model"] = cfg.model;
  req["temperature"] = cfg.temperature;
  req["messages"] = ordered_json::array(
      {{{"role", "user"}, {"content", build_prompt(item, cfg.prompt_template)}}});

  double backoff = cfg.initial_backoff_s;
  std::string last_error;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff *= 2.0;
    }
    httplib::Client client(base);
    httplib::Headers headers;
    if (key_env && *key_env) {
      headers.emplace("Authorization", std::string("Bearer ") + key_env);
    }
    auto res = client.Post(path, headers, req.dump(), "application/json");
    if (!res) {
      last_error = "connection failure";
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw AuditError("audit endpoint returned HTTP " +
                       std::to_string(res->status));
    }
    try {
      auto body = ordered_json::parse(res->body);
      const std::string content =
          body.at("choices").at(0).at("message").at("content").get<std::string>();
      return parse_verdict(content);
    } catch (const std::exception& e) {
      AuditVerdict v;
      v.raw_response = res->body;
      return v;  // unparseable responses are flagged, not guessed
    }
  }
  throw AuditError("audit request failed after " +
                   std::to_string(cfg.max_retries + 1) + " attempts (" +
                   last_error + ")");
}

}  // namespace

std::vector<AuditVerdict> audit_batch(const std::vector<GroundedItem>& items,
                                      const AuditBackendConfig& cfg) {
  std::vector<AuditVerdict> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    if (cfg.kind == "mock") {
      out.push_back(mock_audit(item));
    } else if (cfg.kind == "http") {
      out.push_back(http_audit(item, cfg));
      if (cfg.rate_limit_s > 0.0) {
        std::this_thread::sleep_for(
            std::chrono::duration<double>(cfg.rate_limit_s));
      }
    } else {
      throw AuditError("unknown audit backend '" + cfg.kind + "'");
    }
  }
  return out;
}

AuditAggregate aggregate(const std::vector<AuditVerdict>& verdicts,
                         const std::vector<GroundedItem>& items,
                         const CueLexicon& lex) {
  if (verdicts.size() != items.size()) {
    throw AuditError("aggregate: verdict/item count mismatch");
  }
  struct Tally {
    long correct = 0, incomplete = 0, wrong = 0, unparsed = 0;
  };
  Tally total;
  std::map<Cue, Tally> per_cue;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto bump = [&](Tally& t) {
      switch (verdicts[i].label) {
        case AuditVerdict::Label::Correct: ++t.correct; break;
        case AuditVerdict::Label::Incomplete: ++t.incomplete; break;
        case AuditVerdict::Label::Wrong: ++t.wrong; break;
        case AuditVerdict::Label::Unparsed: ++t.unparsed; break;
      }
    };
    bump(total);
    auto ann = detect_cues(items[i].description, lex);
    std::set<Cue> cues_here;
    for (const auto& m : ann.cues) cues_here.insert(m.cue);
    for (Cue c : cues_here) bump(per_cue[c]);
  }

  AuditAggregate agg;
  auto emit = [&](const std::string& name, const Tally& t) {
    AuditAggregate::Row row;
    row.cue = name;
    row.correct = t.correct;
    row.incomplete = t.incomplete;
    row.wrong = t.wrong;
    row.unparsed = t.unparsed;
    const long parsed = t.correct + t.incomplete + t.wrong;
    if (parsed > 0) {
      row.pct_correct = 100.0 * static_cast<double>(t.correct) / parsed;
      row.pct_incomplete = 100.0 * static_cast<double>(t.incomplete) / parsed;
      row.pct_wrong = 100.0 * static_cast<double>(t.wrong) / parsed;
    }
    agg.rows.push_back(row);
  };
  emit("Total", total);
  for (Cue c : kOrderedCues) {
    if (auto it = per_cue.find(c); it != per_cue.end()) {
      emit(cue_name(c), it->second);
    }
  }
  return agg;
}

std::string aggregate_csv(const AuditAggregate& agg) {
  std::ostringstream out;
  out << "cue,correct,incomplete,wrong,unparsed,pct_correct,pct_incomplete,pct_wrong\n";
  for (const auto& r : agg.rows) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f,%.1f,%.1f", r.pct_correct,
                  r.pct_incomplete, r.pct_wrong);
    out << r.cue << ',' << r.correct << ',' << r.incomplete << ',' << r.wrong
        << ',' << r.unparsed << ',' << buf << '\n';
  }
  return out.str();
}

std::vector<GroundedItem> parse_grounded(const std::string& jsonl) {
  std::vector<GroundedItem> items;
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
      throw AuditError("line " + std::to_string(line_no) + ": " + e.what());
    }
    GroundedItem item;
    item.description = j.at("description").get<std::string>();
    for (const auto& c : j.at("components")) {
      item.components.push_back({c.at("label").get<std::string>(),
                                 c.at("onset").get<double>(),
                                 c.at("offset").get<double>()});
    }
    if (item.components.empty()) {
      throw AuditError("line " + std::to_string(line_no) +
                       ": item has no components");
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<GroundedItem> load_grounded(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AuditError("cannot open grounded file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grounded(buf.str());
}

std::string serialize_grounded(const std::vector<GroundedItem>& items) {
  std::string out;
  for (const auto& item : items) {
    ordered_json j;
    j["description"] = item.description;
    ordered_json comps = ordered_json::array();
    for (const auto& c : item.components) {
      comps.push_back({{"label", c.label}, {"onset", c.onset_s},
                       {"offset", c.offset_s}});
    }
    j["components"] = comps;
    out += j.dump() + "\n";
  }
  return out;
}

std::string serialize_verdicts(const std::vector<AuditVerdict>& verdicts) {
  std::string out;
  for (const auto& v : verdicts) {
    ordered_json j;
    j["label"] = verdict_label_name(v.label);
    if (v.corrected_description) j["corrected"] = *v.corrected_description;
    j["raw"] = v.raw_response;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace temporet
