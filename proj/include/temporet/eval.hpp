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

#ifndef TEMPORET_EVAL_HPP
#define TEMPORET_EVAL_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "temporet/model.hpp"
#include "temporet/syncaps.hpp"
#include "temporet/transform.hpp"

namespace temporet {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Percentage of queries whose top-k rows (descending similarity, ties
/// broken by lower gallery index) intersect the query's relevant set.
double recall_at_k(const Mat& sim, const std::vector<std::set<std::size_t>>& relevance,
                   int k);

struct EvalReport {
  struct Entry {
    std::string subset;     // Test | TempTest | TempTest_rev | TempTest_rep
    std::string direction;  // t2a | a2t
    int k = 1;
    std::vector<double> per_seed;
    double mean = 0.0;
  };
  struct Gap {
    std::string direction;
    double d_rev = 0.0;  // mean R@1(TempTest) - mean R@1(TempTest_rev)
    double d_rep = 0.0;
  };
  std::vector<Entry> entries;
  std::vector<Gap> gaps;
  std::vector<std::string> notes;

  const Entry* find(const std::string& subset, const std::string& direction,
                    int k) const;
};

struct EvalOptions {
  bool include_rev = true;
  bool include_rep = true;
  RepMap::Mode rep_mode = RepMap::Mode::PaperCompat;
  std::string audio_root;  // directory for wav-backed records
  std::vector<int> ks = {1, 5, 10};
};

/// Multi-caption retrieval protocol: every caption is its own text query
/// (T->A); an audio query succeeds if any of its captions is retrieved
/// (A->T). TempTest keeps exactly the test records where rev/rep apply,
/// so base and derived metrics are paired.
EvalReport evaluate(const std::vector<Checkpoint>& checkpoints,
                    const DatasetManifest& manifest,
                    const std::vector<SoundBankEntry>& bank,
                    const EvalOptions& options);

/// Recomputes the R@1 gap rows from the report entries.
std::vector<EvalReport::Gap> temporal_gap(const EvalReport& report);

std::string report_csv(const EvalReport& report);
EvalReport report_from_csv(const std::string& csv);
std::string report_table(const EvalReport& report);

}  // namespace temporet

#endif  // TEMPORET_EVAL_HPP
