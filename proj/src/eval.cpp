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

#include "temporet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace temporet {

namespace {

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

bool caption_applicable(const CaptionAnnotation& ann) {
  return ann.single_directional_cue() && ann.events_text_order.size() == 2;
}

struct SubsetData {
  std::vector<std::size_t> record_idx;             // into the test records
  std::vector<std::vector<std::string>> captions;  // per record
};

}  // namespace

double recall_at_k(const Mat& sim,
                   const std::vector<std::set<std::size_t>>& relevance, int k) {
  if (k < 1) throw EvalError("recall_at_k: k must be >= 1");
  if (sim.size() != relevance.size()) {
    throw EvalError("recall_at_k: relevance size mismatch");
  }
  if (sim.empty()) throw EvalError("recall_at_k: empty similarity matrix");
  long hits = 0;
  for (std::size_t q = 0; q < sim.size(); ++q) {
    const auto& row = sim[q];
    if (relevance[q].empty()) {
      throw EvalError("recall_at_k: query " + std::to_string(q) +
                      " has empty relevance set");
    }
    // rank of item j: how many items are strictly better, ties broken by
    // lower gallery index
    std::size_t best_rank = row.size();
    for (std::size_t j : relevance[q]) {
      std::size_t rank = 0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] > row[j] || (row[i] == row[j] && i < j)) ++rank;
      }
      best_rank = std::min(best_rank, rank);
    }
    if (best_rank < static_cast<std::size_t>(k)) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(sim.size());
}

const EvalReport::Entry* EvalReport::find(const std::string& subset,
                                          const std::string& direction,
                                          int k) const {
  for (const auto& e : entries) {
    if (e.subset == subset && e.direction == direction && e.k == k) return &e;
  }
  return nullptr;
}

EvalReport evaluate(const std::vector<Checkpoint>& checkpoints,
                    const DatasetManifest& manifest,
                    const std::vector<SoundBankEntry>& bank,
                    const EvalOptions& options) {
  if (checkpoints.empty()) throw EvalError("evaluate: no checkpoints");
  const CueLexicon lex = CueLexicon::standard();
  const RepMap rep_map = RepMap::standard(options.rep_mode);

  std::vector<const ManifestRecord*> test_records;
  for (const auto& r : manifest.records) {
    if (r.split == "test") test_records.push_back(&r);
  }
  if (test_records.empty()) throw EvalError("evaluate: manifest has no test split");

  // Frame features are model-independent; compute once.
  const auto& cfg0 = checkpoints[0].params.config;
  std::vector<FrameFeatures> feats(test_records.size());
  for (std::size_t i = 0; i < test_records.size(); ++i) {
    const auto& r = *test_records[i];
    AudioClip clip;
    if (r.meta.count("gen")) {
      clip = materialize_record(r, bank);
    } else if (!r.audio_path.empty()) {
      std::string path = options.audio_root.empty()
                             ? r.audio_path
                             : options.audio_root + "/" + r.audio_path;
      clip = read_wav(path);
    } else {
      throw EvalError("record '" + r.id + "' has neither recipe nor audio path");
    }
    feats[i] = features(clip, 0.5, cfg0.bands);
  }

  // Subset construction. TempTest keeps exactly the records with at least
  // one transformable caption so base and derived subsets stay paired.
  SubsetData full, base, rev_set, rep_set;
  for (std::size_t i = 0; i < test_records.size(); ++i) {
    const auto& r = *test_records[i];
    full.record_idx.push_back(i);
    full.captions.push_back(r.captions);

    bool any = false;
    std::vector<std::string> rev_caps = r.captions, rep_caps = r.captions;
    for (std::size_t c = 0; c < r.captions.size(); ++c) {
      auto ann = detect_cues(r.captions[c], lex);
      if (!caption_applicable(ann)) continue;
      any = true;
      rev_caps[c] = rev(ann, lex).text;
      rep_caps[c] = rep(ann, rep_map, lex).text;
    }
    if (!any) continue;
    base.record_idx.push_back(i);
    base.captions.push_back(r.captions);
    rev_set.record_idx.push_back(i);
    rev_set.captions.push_back(rev_caps);
    rep_set.record_idx.push_back(i);
    rep_set.captions.push_back(rep_caps);
  }

  std::vector<std::pair<std::string, const SubsetData*>> subsets = {
      {"Test", &full}, {"TempTest", &base}};
  if (options.include_rev) subsets.emplace_back("TempTest_rev", &rev_set);
  if (options.include_rep) subsets.emplace_back("TempTest_rep", &rep_set);

  EvalReport report;
  report.notes.push_back(
      "TempTest: test records with >=1 single-cue future/past caption; "
      "derived subsets transform every applicable caption and keep the rest.");
  report.notes.push_back("ties broken by lower gallery index");

  std::map<std::string, std::map<std::string, std::map<int, std::vector<double>>>>
      acc;  // subset -> direction -> k -> per-seed
  for (const auto& ckpt : checkpoints) {
    const auto& p = ckpt.params;
    // Audio embeddings are shared by every subset of this checkpoint.
    std::vector<Vec> audio_emb(test_records.size());
    for (std::size_t i = 0; i < test_records.size(); ++i) {
      audio_emb[i] = encode_audio(p, feats[i]);
    }
    for (const auto& [name, data] : subsets) {
      if (data->record_idx.empty()) continue;
      const std::size_t n_rec = data->record_idx.size();
      std::vector<Vec> text_emb;
      std::vector<std::size_t> caption_owner;
      for (std::size_t ri = 0; ri < n_rec; ++ri) {
        for (const auto& caption : data->captions[ri]) {
          auto tokens = tokenize(caption, lex, p.vocab, p.config.l_max);
          text_emb.push_back(encode_text(p, tokens));
          caption_owner.push_back(ri);
        }
      }
      // text -> audio
      Mat t2a(text_emb.size(), Vec(n_rec));
      std::vector<std::set<std::size_t>> t2a_rel(text_emb.size());
      for (std::size_t q = 0; q < text_emb.size(); ++q) {
        for (std::size_t g = 0; g < n_rec; ++g) {
          t2a[q][g] = dot(text_emb[q], audio_emb[data->record_idx[g]]);
        }
        t2a_rel[q].insert(caption_owner[q]);
      }
      // audio -> text
      Mat a2t(n_rec, Vec(text_emb.size()));
      std::vector<std::set<std::size_t>> a2t_rel(n_rec);
      for (std::size_t g = 0; g < n_rec; ++g) {
        for (std::size_t q = 0; q < text_emb.size(); ++q) {
          a2t[g][q] = dot(audio_emb[data->record_idx[g]], text_emb[q]);
          if (caption_owner[q] == g) a2t_rel[g].insert(q);
        }
      }
      for (int k : options.ks) {
        acc[name]["t2a"][k].push_back(recall_at_k(t2a, t2a_rel, k));
        acc[name]["a2t"][k].push_back(recall_at_k(a2t, a2t_rel, k));
      }
    }
  }

  for (const auto& [name, data] : subsets) {
    for (const std::string direction : {"t2a", "a2t"}) {
      for (int k : options.ks) {
        auto it = acc.find(name);
        if (it == acc.end()) continue;
        EvalReport::Entry e;
        e.subset = name;
        e.direction = direction;
        e.k = k;
        e.per_seed = it->second[direction][k];
        double sum = 0.0;
        for (double v : e.per_seed) sum += v;
        e.mean = e.per_seed.empty() ? 0.0 : sum / static_cast<double>(e.per_seed.size());
        report.entries.push_back(std::move(e));
      }
    }
  }
  report.gaps = temporal_gap(report);
  return report;
}

std::vector<EvalReport::Gap> temporal_gap(const EvalReport& report) {
  std::vector<EvalReport::Gap> gaps;
  for (const std::string direction : {"t2a", "a2t"}) {
    const auto* base = report.find("TempTest", direction, 1);
    if (!base) continue;
    EvalReport::Gap g;
    g.direction = direction;
    if (const auto* r = report.find("TempTest_rev", direction, 1)) {
      g.d_rev = base->mean - r->mean;
    }
    if (const auto* r = report.find("TempTest_rep", direction, 1)) {
      g.d_rep = base->mean - r->mean;
    }
    gaps.push_back(g);
  }
  return gaps;
}

std::string report_csv(const EvalReport& report) {
  std::ostringstream out;
  for (const auto& note : report.notes) out << "# " << note << '\n';
  out << "subset,direction,k,mean,per_seed\n";
  for (const auto& e : report.entries) {
    out << e.subset << ',' << e.direction << ',' << e.k << ',' << fmt4(e.mean)
        << ',';
    for (std::size_t i = 0; i < e.per_seed.size(); ++i) {
      if (i) out << ';';
      out << fmt4(e.per_seed[i]);
    }
    out << '\n';
  }
  for (const auto& g : report.gaps) {
    out << "gap," << g.direction << ",rev," << fmt4(g.d_rev) << ",\n";
    out << "gap," << g.direction << ",rep," << fmt4(g.d_rep) << ",\n";
  }
  return out.str();
}

EvalReport report_from_csv(const std::string& csv) {
  EvalReport report;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      report.notes.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() < 4 || cells[0] == "subset") continue;
    if (cells[0] == "gap") {
      auto find_gap = [&](const std::string& dir) -> EvalReport::Gap& {
        for (auto& g : report.gaps) {
          if (g.direction == dir) return g;
        }
        report.gaps.push_back({dir, 0.0, 0.0});
        return report.gaps.back();
      };
      auto& g = find_gap(cells[1]);
      (cells[2] == "rev" ? g.d_rev : g.d_rep) = std::strtod(cells[3].c_str(), nullptr);
      continue;
    }
    EvalReport::Entry e;
    e.subset = cells[0];
    e.direction = cells[1];
    e.k = std::stoi(cells[2]);
    e.mean = std::strtod(cells[3].c_str(), nullptr);
    if (cells.size() > 4 && !cells[4].empty()) {
      std::istringstream ss(cells[4]);
      std::string v;
      while (std::getline(ss, v, ';')) {
        e.per_seed.push_back(std::strtod(v.c_str(), nullptr));
      }
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::string report_table(const EvalReport& report) {
  std::ostringstream out;
  out << "subset            dir   R@1      R@5      R@10\n";
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : report.entries) {
    auto key = std::make_pair(e.subset, e.direction);
    if (!seen.insert(key).second) continue;
    char line[128];
    auto get = [&](int k) {
      const auto* p = report.find(e.subset, e.direction, k);
      return p ? p->mean : std::nan("");
    };
    std::snprintf(line, sizeof(line), "%-17s %-5s %-8.2f %-8.2f %-8.2f\n",
                  e.subset.c_str(), e.direction.c_str(), get(1), get(5), get(10));
    out << line;
  }
  for (const auto& g : report.gaps) {
    char line[128];
    std::snprintf(line, sizeof(line),
                  "gap %-4s  delta_rev=%-8.2f delta_rep=%-8.2f\n",
                  g.direction.c_str(), g.d_rev, g.d_rep);
    out << line;
  }
  return out.str();
}

}  // namespace temporet
