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

#ifndef TEMPORET_AUDIT_HPP
#define TEMPORET_AUDIT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "temporet/corpus.hpp"
#include "temporet/cue.hpp"

namespace temporet {

class AuditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caption plus the grounded sounds it is supposed to describe.
struct GroundedItem {
  std::string description;
  std::vector<SoundEvent> components;
};

struct AuditVerdict {
  enum class Label { Correct, Incomplete, Wrong, Unparsed };
  Label label = Label::Unparsed;
  std::optional<std::string> corrected_description;
  std::string raw_response;
};

std::string verdict_label_name(AuditVerdict::Label label);

/// Substitutes {description} and {components} into the template.
/// Component lines are formatted "label: start, end;".
std::string build_prompt(const GroundedItem& item, const std::string& tmpl);

/// Time formatting used in component lines: trailing zeros trimmed but at
/// least one fractional digit ("0.0", "2.154", "10.02").
std::string format_component_time(double t);

/// Parses "Evaluation: <label>" (+ optional "Corrected description: ...")
/// out of a model response. Unrecognized responses become Unparsed.
AuditVerdict parse_verdict(const std::string& response);

struct AuditBackendConfig {
  std::string kind = "mock";  // mock | http
  std::string model = "gpt-4";
  double temperature = 0.0;
  int max_retries = 3;
  double rate_limit_s = 0.0;      // sleep between requests
  double initial_backoff_s = 1.0; // doubles per retry
  std::string prompt_template;
};

std::vector<AuditVerdict> audit_batch(const std::vector<GroundedItem>& items,
                                      const AuditBackendConfig& cfg);

/// Deterministic stand-in for the LLM: Correct when the description
/// mentions every component label in onset order, Wrong when all labels
/// are present but out of order, Incomplete otherwise.
AuditVerdict mock_audit(const GroundedItem& item);

struct AuditAggregate {
  struct Row {
    std::string cue;  // cue name or "Total"
    long correct = 0, incomplete = 0, wrong = 0, unparsed = 0;
    double pct_correct = 0.0, pct_incomplete = 0.0, pct_wrong = 0.0;
  };
  std::vector<Row> rows;  // Total first, then per cue
};

/// Per-cue percentages, Tab-style: one row per cue occurring in the item
/// captions (an item with several cues counts once per cue).
AuditAggregate aggregate(const std::vector<AuditVerdict>& verdicts,
                         const std::vector<GroundedItem>& items,
                         const CueLexicon& lex);

std::string aggregate_csv(const AuditAggregate& agg);

// JSON Lines I/O for grounded items and verdicts.
std::vector<GroundedItem> load_grounded(const std::string& path);
std::string serialize_grounded(const std::vector<GroundedItem>& items);
std::vector<GroundedItem> parse_grounded(const std::string& jsonl);
std::string serialize_verdicts(const std::vector<AuditVerdict>& verdicts);

}  // namespace temporet

#endif  // TEMPORET_AUDIT_HPP
