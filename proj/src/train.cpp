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

#include "temporet/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "temporet/rng.hpp"
#include "temporet/transform.hpp"

namespace temporet {

AdamOptimizer::AdamOptimizer(const DualEncoderParams& params, double lr,
                             double beta1, double beta2, double eps)
    : lr_(lr),
      beta1_(beta1),
      beta2_(beta2),
      eps_(eps),
      m_(Gradients::zeros_like(params)),
      v_(Gradients::zeros_like(params)) {}

void AdamOptimizer::step(DualEncoderParams& params, const Gradients& grads) {
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  auto blocks = params.blocks();
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    Tensor& p = *blocks[bi].second;
    const Tensor& g = grads.blocks[bi].second;
    Tensor& m = m_.blocks[bi].second;
    Tensor& v = v_.blocks[bi].second;
    for (std::size_t i = 0; i < p.v.size(); ++i) {
      m.v[i] = beta1_ * m.v[i] + (1.0 - beta1_) * g.v[i];
      v.v[i] = beta2_ * v.v[i] + (1.0 - beta2_) * g.v[i] * g.v[i];
      const double mhat = m.v[i] / bc1;
      const double vhat = v.v[i] / bc2;
      p.v[i] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
    }
  }
}

namespace {

FrameFeatures record_features(const ManifestRecord& r,
                              const std::vector<SoundBankEntry>& bank,
                              const std::string& audio_root, int bands) {
  AudioClip clip;
  if (r.meta.count("gen")) {
    clip = materialize_record(r, bank);
  } else if (!r.audio_path.empty()) {
    std::string path =
        audio_root.empty() ? r.audio_path : audio_root + "/" + r.audio_path;
    clip = read_wav(path);
  } else {
    throw TrainError("record '" + r.id + "' has neither recipe nor audio path");
  }
  return features(clip, 0.5, bands);
}

struct PreparedSet {
  std::vector<BatchItem> items;  // first caption of every record
};

PreparedSet prepare(const std::vector<const ManifestRecord*>& records,
                    const std::vector<SoundBankEntry>& bank,
                    const TrainConfig& cfg, const DualEncoderParams& params,
                    const CueLexicon& lex, bool with_contrastive) {
  PreparedSet set;
  for (const auto* r : records) {
    BatchItem item;
    item.feats = record_features(*r, bank, cfg.audio_root, cfg.model.bands);
    const std::string& caption = r->captions.front();
    item.caption_tokens = tokenize(caption, lex, params.vocab, cfg.model.l_max);
    if (with_contrastive) {
      auto ann = detect_cues(caption, lex);
      if (ann.single_directional_cue() && ann.events_text_order.size() == 2) {
        auto cset = make_contrastive_set(ann, lex);
        for (const auto& t : cset.positives) {
          item.pos_tokens.push_back(tokenize(t, lex, params.vocab, cfg.model.l_max));
        }
        for (const auto& t : cset.negatives) {
          item.neg_tokens.push_back(tokenize(t, lex, params.vocab, cfg.model.l_max));
        }
      }
    }
    set.items.push_back(std::move(item));
  }
  return set;
}

std::pair<double, double> val_r1(const DualEncoderParams& params,
                                 const PreparedSet& val) {
  Mat audio_embs, text_embs;
  for (const auto& item : val.items) {
    audio_embs.push_back(encode_audio(params, item.feats));
    text_embs.push_back(encode_text(params, item.caption_tokens));
  }
  const std::size_t n = val.items.size();
  Mat t2a(n, Vec(n)), a2t(n, Vec(n));
  std::vector<std::set<std::size_t>> rel(n);
  for (std::size_t i = 0; i < n; ++i) {
    rel[i].insert(i);
    for (std::size_t j = 0; j < n; ++j) {
      t2a[i][j] = dot(text_embs[i], audio_embs[j]);
      a2t[i][j] = dot(audio_embs[i], text_embs[j]);
    }
  }
  return {recall_at_k(t2a, rel, 1), recall_at_k(a2t, rel, 1)};
}

}  // namespace

TrainResult train(const DatasetManifest& manifest,
                  const std::vector<SoundBankEntry>& bank,
                  const TrainConfig& cfg, std::uint64_t seed) {
  const CueLexicon lex = CueLexicon::standard();
  std::vector<const ManifestRecord*> train_records, val_records;
  DatasetManifest vocab_source;
  for (const auto& r : manifest.records) {
    if (r.split == "train") {
      train_records.push_back(&r);
      vocab_source.records.push_back(r);
    } else if (r.split == "val") {
      val_records.push_back(&r);
    }
  }
  if (train_records.empty()) throw TrainError("train: empty train split");
  if (val_records.empty()) throw TrainError("train: empty val split");

  const Vocabulary vocab = build_vocabulary(vocab_source, lex);
  DualEncoderParams params = DualEncoderParams::init(cfg.model, vocab, seed);

  const bool with_tt = cfg.loss.lambda != 0.0;
  PreparedSet train_set = prepare(train_records, bank, cfg, params, lex, with_tt);
  PreparedSet val_set = prepare(val_records, bank, cfg, params, lex, false);

  AdamOptimizer opt(params, cfg.lr, cfg.beta1, cfg.beta2, cfg.adam_eps);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);

  TrainResult result;
  std::ostringstream log;
  log << "epoch,train_loss,val_r1_t2a,val_r1_a2t\n";
  double best_val = -1.0;

  std::vector<std::size_t> order(train_set.items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    long n_batches = 0;
    for (std::size_t off = 0; off < order.size();
         off += static_cast<std::size_t>(cfg.batch)) {
      std::vector<BatchItem> batch;
      const std::size_t end =
          std::min(order.size(), off + static_cast<std::size_t>(cfg.batch));
      for (std::size_t i = off; i < end; ++i) {
        batch.push_back(train_set.items[order[i]]);
      }
      auto res = backward(params, batch, cfg.loss);
      opt.step(params, res.grads);
      loss_sum += res.loss;
      ++n_batches;
    }
    const double train_loss = loss_sum / static_cast<double>(n_batches);
    const auto [v_t2a, v_a2t] = val_r1(params, val_set);
    const double val = 0.5 * (v_t2a + v_a2t);
    result.val_history.push_back(val);
    char line[96];
    std::snprintf(line, sizeof(line), "%d,%.6f,%.4f,%.4f\n", epoch, train_loss,
                  v_t2a, v_a2t);
    log << line;
    if (val > best_val) {
      best_val = val;
      result.best.params = params;
      result.best.loss = cfg.loss;
    }
  }
  result.best.val_history = result.val_history;
  result.log_csv = log.str();
  return result;
}

std::vector<TrainResult> run_seeds(const DatasetManifest& manifest,
                                   const std::vector<SoundBankEntry>& bank,
                                   const TrainConfig& cfg,
                                   const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw TrainError("run_seeds: need at least one seed");
  std::vector<TrainResult> results;
  results.reserve(seeds.size());
  for (std::uint64_t s : seeds) {
    results.push_back(train(manifest, bank, cfg, s));
  }
  return results;
}

}  // namespace temporet
