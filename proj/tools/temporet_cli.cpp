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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "temporet/audit.hpp"
#include "temporet/audio.hpp"
#include "temporet/corpus.hpp"
#include "temporet/cue.hpp"
#include "temporet/eval.hpp"
#include "temporet/svg.hpp"
#include "temporet/syncaps.hpp"
#include "temporet/train.hpp"
#include "temporet/transform.hpp"

namespace fs = std::filesystem;
using namespace temporet;

namespace {

struct BankFlags {
  std::string bank = "builtin";  // builtin | esc50:<dir>
  int labels = 50;
  int clips = 40;
  int sr = 16000;
  std::uint64_t bank_seed = 1;
};

void add_bank_flags(CLI::App* cmd, BankFlags& f) {
  cmd->add_option("--bank", f.bank, "Sound bank: builtin or esc50:<dir>")
      ->capture_default_str();
  cmd->add_option("--labels", f.labels, "Builtin bank: number of labels")
      ->capture_default_str();
  cmd->add_option("--clips-per-label", f.clips,
                  "Builtin bank: clips per label")
      ->capture_default_str();
  cmd->add_option("--sr", f.sr, "Builtin bank: sample rate in Hz")
      ->capture_default_str();
  cmd->add_option("--bank-seed", f.bank_seed, "Builtin bank synthesis seed")
      ->capture_default_str();
}

std::vector<SoundBankEntry> make_bank(const BankFlags& f) {
  if (f.bank == "builtin") {
    return synth_bank(f.labels, f.clips, f.sr, f.bank_seed);
  }
  if (f.bank.rfind("esc50:", 0) == 0) {
    return load_esc50_bank(f.bank.substr(6));
  }
  throw std::runtime_error("unknown bank '" + f.bank +
                           "' (expected builtin or esc50:<dir>)");
}

SyncapsSizes parse_sizes(const std::string& s) {
  SyncapsSizes sizes;
  if (std::sscanf(s.c_str(), "%d,%d,%d", &sizes.train, &sizes.val,
                  &sizes.test) != 3 ||
      sizes.train < 0 || sizes.val < 0 || sizes.test < 0) {
    throw std::runtime_error("--sizes expects three integers like 4400,485,485");
  }
  return sizes;
}

void write_text(const std::string& path, const std::string& content) {
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Deterministic chunked parallelism: results are written to disjoint
/// indices, so thread count never changes the output.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t nj = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < nj; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += nj) body(i);
    });
  }
  for (auto& t : workers) t.join();
}

std::vector<BarSeries> histogram_series(const CueHistogram& h) {
  BarSeries counts;
  counts.name = "captions";
  for (Cue c : kOrderedCues) {
    auto it = h.counts.find(c);
    counts.values.push_back(it == h.counts.end() ? 0.0
                                                 : static_cast<double>(it->second));
  }
  return {counts};
}

std::vector<std::string> cue_category_names() {
  std::vector<std::string> names;
  for (Cue c : kOrderedCues) names.push_back(cue_surface(c));
  return names;
}

int cmd_synth(const BankFlags& bank_flags, const std::string& sizes_str,
              double reuse, std::uint64_t seed, const std::string& out_dir,
              bool write_wavs, int jobs) {
  auto bank = make_bank(bank_flags);
  const SyncapsSizes sizes = parse_sizes(sizes_str);
  DatasetManifest manifest = generate(bank, sizes, reuse, seed);
  fs::create_directories(out_dir);
  if (write_wavs) {
    fs::create_directories(fs::path(out_dir) / "audio");
    parallel_for(manifest.records.size(), jobs, [&](std::size_t i) {
      ManifestRecord& r = manifest.records[i];
      AudioClip clip = materialize_record(r, bank);
      const std::string rel = "audio/" + r.id + ".wav";
      write_wav(clip, (fs::path(out_dir) / rel).string());
      r.audio_path = rel;
    });
  }
  save_manifest(manifest, (fs::path(out_dir) / "manifest.jsonl").string());
  std::cout << "wrote " << manifest.records.size() << " records to " << out_dir
            << "\n";
  return 0;
}

int cmd_analyze(const std::string& in, const std::string& out,
                const std::string& svg, bool before_is_past) {
  const CueLexicon lex = CueLexicon::standard(before_is_past);
  DatasetManifest m = load_manifest(in);
  CueHistogram h = histogram(m, lex);
  write_text(out, histogram_csv(h, lex));
  if (!svg.empty()) {
    write_text(svg, bar_chart_svg("Temporal cue distribution",
                                  cue_category_names(), histogram_series(h),
                                  "captions"));
  }
  std::cout << "analyzed " << h.total_captions << " captions ("
            << h.total_temporal_captions << " temporal)\n";
  return 0;
}

int cmd_transform(const std::string& mode, const std::string& in,
                  const std::string& out, const std::string& rep_mode,
                  std::uint64_t seed) {
  const CueLexicon lex = CueLexicon::standard();
  DatasetManifest m = load_manifest(in);
  DatasetManifest result;
  if (mode == "uni") {
    result = uniformize(m, lex, seed);
  } else if (mode == "rev" || mode == "rep") {
    const RepMap map = RepMap::standard(rep_mode == "corrected"
                                            ? RepMap::Mode::Corrected
                                            : RepMap::Mode::PaperCompat);
    result = transform_manifest(m, mode, map, lex);
  } else {
    throw std::runtime_error("--mode must be rev, rep, or uni");
  }
  save_manifest(result, out);
  std::cout << "wrote " << result.records.size() << " records to " << out
            << "\n";
  return 0;
}

int cmd_train(const BankFlags& bank_flags, const std::string& in,
              const std::string& out, const std::string& log_path,
              TrainConfig& cfg, std::uint64_t seed) {
  auto bank = make_bank(bank_flags);
  DatasetManifest m = load_manifest(in);
  TrainResult result = train(m, bank, cfg, seed);
  save_checkpoint(result.best, out);
  if (!log_path.empty()) write_text(log_path, result.log_csv);
  std::cout << "trained " << cfg.epochs << " epochs, best val R@1 "
            << *std::max_element(result.val_history.begin(),
                                 result.val_history.end())
            << ", checkpoint " << out << "\n";
  return 0;
}

int cmd_eval(const BankFlags& bank_flags, const std::vector<std::string>& ckpts,
             const std::string& in, const std::string& out,
             const std::string& rep_mode, bool print_table) {
  auto bank = make_bank(bank_flags);
  DatasetManifest m = load_manifest(in);
  std::vector<Checkpoint> checkpoints;
  for (const auto& p : ckpts) checkpoints.push_back(load_checkpoint(p));
  EvalOptions options;
  options.rep_mode = rep_mode == "corrected" ? RepMap::Mode::Corrected
                                             : RepMap::Mode::PaperCompat;
  EvalReport report = evaluate(checkpoints, m, bank, options);
  write_text(out, report_csv(report));
  if (print_table) std::cout << report_table(report);
  std::cout << "wrote report to " << out << "\n";
  return 0;
}

int cmd_audit(const std::string& in, const std::string& backend,
              const std::string& out, const std::string& prompt_path,
              const std::string& agg_path, const std::string& model,
              int retries, double rate_limit) {
  std::vector<GroundedItem> items = load_grounded(in);
  AuditBackendConfig cfg;
  cfg.kind = backend;
  cfg.model = model;
  cfg.max_retries = retries;
  cfg.rate_limit_s = rate_limit;
  if (!prompt_path.empty()) cfg.prompt_template = read_text(prompt_path);
  std::vector<AuditVerdict> verdicts = audit_batch(items, cfg);
  write_text(out, serialize_verdicts(verdicts));
  if (!agg_path.empty()) {
    const CueLexicon lex = CueLexicon::standard();
    write_text(agg_path, aggregate_csv(aggregate(verdicts, items, lex)));
  }
  long correct = 0;
  for (const auto& v : verdicts) {
    if (v.label == AuditVerdict::Label::Correct) ++correct;
  }
  std::cout << "audited " << items.size() << " items, " << correct
            << " correct\n";
  return 0;
}

int cmd_report(const std::string& eval_csv, const std::string& manifest_path,
               const std::string& out_dir, bool before_is_past) {
  fs::create_directories(out_dir);
  if (!eval_csv.empty()) {
    EvalReport report = report_from_csv(read_text(eval_csv));
    write_text((fs::path(out_dir) / "eval_report.csv").string(),
               report_csv(report));
    write_text((fs::path(out_dir) / "eval_report.txt").string(),
               report_table(report));
    std::vector<std::string> cats;
    BarSeries t2a{"t2a", {}, "#4477aa"}, a2t{"a2t", {}, "#ee6677"};
    for (const auto& e : report.entries) {
      if (e.k != 1) continue;
      if (e.direction == "t2a") {
        cats.push_back(e.subset);
        t2a.values.push_back(e.mean);
      } else if (e.direction == "a2t") {
        a2t.values.push_back(e.mean);
      }
    }
    if (!cats.empty() && a2t.values.size() == cats.size()) {
      write_text((fs::path(out_dir) / "recall_at_1.svg").string(),
                 bar_chart_svg("R@1 by subset", cats, {t2a, a2t}, "R@1 (%)",
                               100.0));
    }
  }
  if (!manifest_path.empty()) {
    const CueLexicon lex = CueLexicon::standard(before_is_past);
    CueHistogram h = histogram(load_manifest(manifest_path), lex);
    write_text((fs::path(out_dir) / "cue_histogram.csv").string(),
               histogram_csv(h, lex));
    write_text((fs::path(out_dir) / "cue_histogram.svg").string(),
               bar_chart_svg("Temporal cue distribution", cue_category_names(),
                             histogram_series(h), "captions"));
  }
  std::cout << "wrote report files to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal-ordering laboratory for text-to-audio retrieval"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--seed", seed, "Random seed governing all randomness")
      ->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads for data-parallel sections")
      ->capture_default_str();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->set_config("--config", "", "Plain key=value config file");
  BankFlags synth_bankf;
  add_bank_flags(synth, synth_bankf);
  std::string synth_sizes = "4400,485,485";
  double synth_reuse = 5.0;
  std::string synth_out = "syncaps";
  bool synth_wavs = false;
  synth->add_option("--sizes", synth_sizes, "train,val,test record counts")
      ->capture_default_str();
  synth->add_option("--reuse", synth_reuse, "Average clip reuse in train/val")
      ->capture_default_str();
  synth->add_option("--out", synth_out, "Output directory")
      ->capture_default_str();
  synth->add_flag("--wav,!--no-wav", synth_wavs,
                  "Also write per-record WAV files (default: recipe-only "
                  "manifest)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Cue histogram of a manifest");
  analyze->set_config("--config", "", "Plain key=value config file");
  std::string analyze_in, analyze_out = "hist.csv", analyze_svg;
  bool before_is_past = false;
  analyze->add_option("--in", analyze_in, "Input manifest (JSONL)")->required();
  analyze->add_option("--out", analyze_out, "Output histogram CSV")
      ->capture_default_str();
  analyze->add_option("--svg", analyze_svg, "Optional bar chart SVG path");
  analyze->add_flag("--before-past", before_is_past,
                    "Classify 'before' as a past cue");

  // transform
  auto* transform = app.add_subcommand("transform", "Rewrite caption cues");
  transform->set_config("--config", "", "Plain key=value config file");
  std::string tr_mode, tr_in, tr_out, tr_rep_mode = "paper";
  transform->add_option("--mode", tr_mode, "rev | rep | uni")->required();
  transform->add_option("--in", tr_in, "Input manifest (JSONL)")->required();
  transform->add_option("--out", tr_out, "Output manifest (JSONL)")->required();
  transform
      ->add_option("--rep-mode", tr_rep_mode,
                   "Replacement table: paper | corrected")
      ->capture_default_str();

  // train
  auto* train_cmd = app.add_subcommand("train", "Train the dual encoder");
  train_cmd->set_config("--config", "", "Plain key=value config file");
  BankFlags train_bankf;
  add_bank_flags(train_cmd, train_bankf);
  std::string train_in, train_out = "checkpoint.json", train_log;
  TrainConfig tcfg;
  train_cmd->add_option("--in", train_in, "Input manifest (JSONL)")->required();
  train_cmd->add_option("--out", train_out, "Checkpoint output path")
      ->capture_default_str();
  train_cmd->add_option("--log", train_log, "Training log CSV path");
  train_cmd->add_option("--epochs", tcfg.epochs, "Training epochs")
      ->capture_default_str();
  train_cmd->add_option("--batch", tcfg.batch, "Batch size")
      ->capture_default_str();
  train_cmd->add_option("--lr", tcfg.lr, "Adam step size")
      ->capture_default_str();
  train_cmd->add_option("--tau", tcfg.loss.tau, "NT-Xent temperature")
      ->capture_default_str();
  train_cmd
      ->add_option("--lambda", tcfg.loss.lambda,
                   "Text-text loss weight (0 disables)")
      ->capture_default_str();
  train_cmd->add_option("--margin", tcfg.loss.margin, "Text-text hinge margin")
      ->capture_default_str();
  train_cmd->add_option("--dim", tcfg.model.d, "Embedding dimension")
      ->capture_default_str();
  train_cmd->add_option("--hidden", tcfg.model.h, "Encoder MLP hidden width")
      ->capture_default_str();
  train_cmd
      ->add_flag("--positions,!--no-positions", tcfg.model.use_positions,
                 "Add positional encodings before pooling")
      ->capture_default_str();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate checkpoints");
  eval_cmd->set_config("--config", "", "Plain key=value config file");
  BankFlags eval_bankf;
  add_bank_flags(eval_cmd, eval_bankf);
  std::vector<std::string> eval_ckpts;
  std::string eval_in, eval_out = "report.csv", eval_rep_mode = "paper";
  bool eval_table = false;
  eval_cmd->add_option("--ckpt", eval_ckpts, "Checkpoint path (repeatable)")
      ->required();
  eval_cmd->add_option("--in", eval_in, "Input manifest (JSONL)")->required();
  eval_cmd->add_option("--out", eval_out, "Report CSV path")
      ->capture_default_str();
  eval_cmd
      ->add_option("--rep-mode", eval_rep_mode,
                   "Replacement table: paper | corrected")
      ->capture_default_str();
  eval_cmd->add_flag("--table", eval_table, "Print a human-readable table");

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "Caption quality audit");
  audit_cmd->set_config("--config", "", "Plain key=value config file");
  std::string audit_in, audit_backend = "mock", audit_out = "verdicts.jsonl";
  std::string audit_prompt, audit_agg, audit_model = "gpt-4";
  int audit_retries = 3;
  double audit_rate = 0.0;
  audit_cmd->add_option("--in", audit_in, "Grounded items (JSONL)")->required();
  audit_cmd->add_option("--backend", audit_backend, "mock | http")
      ->capture_default_str();
  audit_cmd->add_option("--out", audit_out, "Verdicts output (JSONL)")
      ->capture_default_str();
  audit_cmd->add_option("--prompt", audit_prompt,
                        "Prompt template file (http backend)");
  audit_cmd->add_option("--agg", audit_agg, "Per-cue aggregate CSV path");
  audit_cmd->add_option("--model", audit_model, "Model name for http backend")
      ->capture_default_str();
  audit_cmd->add_option("--retries", audit_retries, "HTTP retries")
      ->capture_default_str();
  audit_cmd
      ->add_option("--rate-limit", audit_rate,
                   "Seconds to sleep between HTTP requests")
      ->capture_default_str();

  // report
  auto* report_cmd =
      app.add_subcommand("report", "Render evaluation and histogram artifacts");
  report_cmd->set_config("--config", "", "Plain key=value config file");
  std::string report_eval, report_manifest, report_out = "report";
  bool report_before_past = false;
  report_cmd->add_option("--eval", report_eval, "Evaluation report CSV");
  report_cmd->add_option("--manifest", report_manifest,
                         "Manifest for cue histograms");
  report_cmd->add_option("--out", report_out, "Output directory")
      ->capture_default_str();
  report_cmd->add_flag("--before-past", report_before_past,
                       "Classify 'before' as a past cue");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      return cmd_synth(synth_bankf, synth_sizes, synth_reuse, seed, synth_out,
                       synth_wavs, jobs);
    }
    if (analyze->parsed()) {
      return cmd_analyze(analyze_in, analyze_out, analyze_svg, before_is_past);
    }
    if (transform->parsed()) {
      return cmd_transform(tr_mode, tr_in, tr_out, tr_rep_mode, seed);
    }
    if (train_cmd->parsed()) {
      return cmd_train(train_bankf, train_in, train_out, train_log, tcfg, seed);
    }
    if (eval_cmd->parsed()) {
      return cmd_eval(eval_bankf, eval_ckpts, eval_in, eval_out, eval_rep_mode,
                      eval_table);
    }
    if (audit_cmd->parsed()) {
      return cmd_audit(audit_in, audit_backend, audit_out, audit_prompt,
                       audit_agg, audit_model, audit_retries, audit_rate);
    }
    if (report_cmd->parsed()) {
      return cmd_report(report_eval, report_manifest, report_out,
                        report_before_past);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
