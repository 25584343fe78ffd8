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

#ifndef TEMPORET_MODEL_HPP
#define TEMPORET_MODEL_HPP

#include <map>
#include <string>
#include <vector>

#include "temporet/audio.hpp"
#include "temporet/corpus.hpp"
#include "temporet/cue.hpp"
#include "temporet/losses.hpp"

namespace temporet {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caption tokenizer vocabulary. Index 0 is the UNK token; multiword cues
/// are fused into single tokens ("followed by" -> "followed_by") before
/// lookup.
struct Vocabulary {
  std::vector<std::string> words;  // words[0] == "<unk>"
  std::map<std::string, int> index;

  int lookup(const std::string& w) const {
    auto it = index.find(w);
    return it == index.end() ? 0 : it->second;
  }
  int size() const { return static_cast<int>(words.size()); }
};

Vocabulary build_vocabulary(const DatasetManifest& m, const CueLexicon& lex);

/// Lowercase, fuse detected multiword cues, split on non-word characters.
std::vector<std::string> tokenize_words(const std::string& text,
                                        const CueLexicon& lex);
std::vector<int> tokenize(const std::string& text, const CueLexicon& lex,
                          const Vocabulary& vocab, int max_len);

struct ModelConfig {
  int d = 64;       // embedding dimension
  int d_tok = 32;   // token / frame vector dimension
  int h = 128;      // MLP hidden width
  int l_max = 32;   // max caption tokens
  int t_max = 64;   // max audio frames
  int bands = 8;    // audio feature bands
  bool use_positions = true;
};

/// Dense row-major matrix; a vector is rows x 1.
struct Tensor {
  std::size_t rows = 0, cols = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
};

struct DualEncoderParams {
  ModelConfig config;
  Vocabulary vocab;

  Tensor tok_emb;   // V x d_tok
  Tensor tok_pos;   // l_max x d_tok
  Tensor t_w1, t_b1, t_w2, t_b2;  // h x d_tok, h, d x h, d
  Tensor a_proj;    // d_tok x bands
  Tensor a_pos;     // t_max x d_tok
  Tensor a_w1, a_b1, a_w2, a_b2;

  static DualEncoderParams init(const ModelConfig& cfg, const Vocabulary& vocab,
                                std::uint64_t seed);

  /// Named views over every learnable block, in a fixed order.
  std::vector<std::pair<std::string, Tensor*>> blocks();
  std::vector<std::pair<std::string, const Tensor*>> blocks() const;
};

/// Shape-congruent with DualEncoderParams.
struct Gradients {
  std::vector<std::pair<std::string, Tensor>> blocks;

  static Gradients zeros_like(const DualEncoderParams& p);
  Tensor* find(const std::string& name);
};

Vec encode_text(const DualEncoderParams& p, const std::vector<int>& tokens);
Vec encode_audio(const DualEncoderParams& p, const FrameFeatures& feats);

/// One training example: a text-audio pair plus optional pre-generated
/// contrastive rewrites of the caption.
struct BatchItem {
  std::vector<int> caption_tokens;
  FrameFeatures feats;
  std::vector<std::vector<int>> pos_tokens;  // empty or size 2
  std::vector<std::vector<int>> neg_tokens;  // empty or size 2
};

struct BackwardResult {
  double loss = 0.0;
  double loss_ta = 0.0;
  double loss_tt = 0.0;
  Gradients grads;
};

/// Exact reverse-mode gradients of nt_xent (+ lambda * text_text when
/// cfg.lambda > 0) over the batch.
BackwardResult backward(const DualEncoderParams& p,
                        const std::vector<BatchItem>& batch,
                        const LossConfig& cfg);

/// Forward-only loss, same arithmetic as backward().
double forward_loss(const DualEncoderParams& p,
                    const std::vector<BatchItem>& batch, const LossConfig& cfg);

// ---- checkpoints ----

struct Checkpoint {
  DualEncoderParams params;
  LossConfig loss;
  std::vector<double> val_history;  // mean val R@1 per epoch
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);
std::string serialize_checkpoint(const Checkpoint& ckpt);
Checkpoint parse_checkpoint(const std::string& json_text);

}  // namespace temporet

#endif  // TEMPORET_MODEL_HPP
