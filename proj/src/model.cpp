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

#include "temporet/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "temporet/rng.hpp"

namespace temporet {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fuse_cues(const std::string& text, const CueLexicon& lex) {
  auto ann = detect_cues(text, lex);
  std::string out;
  std::size_t pos = 0;
  for (const auto& m : ann.cues) {
    out += text.substr(pos, m.begin - pos);
    std::string fused = cue_surface(m.cue);
    std::replace(fused.begin(), fused.end(), ' ', '_');
    out += fused;
    pos = m.end;
  }
  out += text.substr(pos);
  return out;
}

}  // namespace

std::vector<std::string> tokenize_words(const std::string& text,
                                        const CueLexicon& lex) {
  const std::string fused = fuse_cues(text, lex);
  std::vector<std::string> words;
  std::string cur;
  for (char c : fused) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '_' || c == '\'') {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (!cur.empty()) {
      words.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(cur);
  return words;
}

Vocabulary build_vocabulary(const DatasetManifest& m, const CueLexicon& lex) {
  std::set<std::string> seen;
  for (const auto& r : m.records) {
    for (const auto& caption : r.captions) {
      for (const auto& w : tokenize_words(caption, lex)) seen.insert(w);
    }
  }
  // Canonical cue tokens are always in-vocabulary so pre-generated
  // contrastive rewrites never hit UNK.
  for (Cue c : kOrderedCues) {
    std::string fused = cue_surface(c);
    std::replace(fused.begin(), fused.end(), ' ', '_');
    seen.insert(fused);
  }
  Vocabulary v;
  v.words.push_back("<unk>");
  for (const auto& w : seen) v.words.push_back(w);
  for (std::size_t i = 0; i < v.words.size(); ++i) {
    v.index[v.words[i]] = static_cast<int>(i);
  }
  return v;
}

std::vector<int> tokenize(const std::string& text, const CueLexicon& lex,
                          const Vocabulary& vocab, int max_len) {
  std::vector<int> ids;
  for (const auto& w : tokenize_words(text, lex)) {
    if (static_cast<int>(ids.size()) >= max_len) break;
    ids.push_back(vocab.lookup(w));
  }
  return ids;
}

DualEncoderParams DualEncoderParams::init(const ModelConfig& cfg,
                                          const Vocabulary& vocab,
                                          std::uint64_t seed) {
  DualEncoderParams p;
  p.config = cfg;
  p.vocab = vocab;
  const auto V = static_cast<std::size_t>(vocab.size());
  const auto dt = static_cast<std::size_t>(cfg.d_tok);
  const auto d = static_cast<std::size_t>(cfg.d);
  const auto h = static_cast<std::size_t>(cfg.h);
  p.tok_emb = Tensor(V, dt);
  p.tok_pos = Tensor(static_cast<std::size_t>(cfg.l_max), dt);
  p.t_w1 = Tensor(h, dt);
  p.t_b1 = Tensor(h, 1);
  p.t_w2 = Tensor(d, h);
  p.t_b2 = Tensor(d, 1);
  p.a_proj = Tensor(dt, static_cast<std::size_t>(cfg.bands));
  p.a_pos = Tensor(static_cast<std::size_t>(cfg.t_max), dt);
  p.a_w1 = Tensor(h, dt);
  p.a_b1 = Tensor(h, 1);
  p.a_w2 = Tensor(d, h);
  p.a_b2 = Tensor(d, 1);
  Rng rng(seed);
  for (auto& [name, t] : p.blocks()) {
    for (double& x : t->v) x = rng.uniform(-0.05, 0.05);
  }
  return p;
}

std::vector<std::pair<std::string, Tensor*>> DualEncoderParams::blocks() {
  return {
      {"tok_emb", &tok_emb}, {"tok_pos", &tok_pos}, {"t_w1", &t_w1},
      {"t_b1", &t_b1},       {"t_w2", &t_w2},       {"t_b2", &t_b2},
      {"a_proj", &a_proj},   {"a_pos", &a_pos},     {"a_w1", &a_w1},
      {"a_b1", &a_b1},       {"a_w2", &a_w2},       {"a_b2", &a_b2},
  };
}

std::vector<std::pair<std::string, const Tensor*>> DualEncoderParams::blocks()
    const {
  std::vector<std::pair<std::string, const Tensor*>> out;
  for (auto& [name, t] : const_cast<DualEncoderParams*>(this)->blocks()) {
    out.emplace_back(name, t);
  }
  return out;
}

Gradients Gradients::zeros_like(const DualEncoderParams& p) {
  Gradients g;
  for (const auto& [name, t] : p.blocks()) {
    g.blocks.emplace_back(name, Tensor(t->rows, t->cols));
  }
  return g;
}

Tensor* Gradients::find(const std::string& name) {
  for (auto& [n, t] : blocks) {
    if (n == name) return &t;
  }
  return nullptr;
}

namespace {

constexpr double kNormEps = 1e-12;

// Fixed gain on the first-layer weight path: h = tanh(gain * W1 x + b1).
// Entries start at Uniform[-0.05, 0.05], which leaves tanh in its linear
// range where token order and cue identity cannot interact; the gain moves
// the hidden layer into the curved region from the first step. The bias
// enters after the gain, so its sensitivity stays O(1).
constexpr double kHiddenGain = 8.0;

// Position-weighted pooling of (token_emb + pos_emb) inputs, then the
// tanh MLP, then L2 normalization. The nonlinearity sits after the pool
// so cue identity and clause order can interact in the hidden layer.
struct EncodeCache {
  std::vector<double> pw;  // pooling weight per position
  Vec x;                   // pooled input (d_tok)
  Vec hact;                // hidden activations (h)
  Vec y, e;                // pre-norm / unit output
  double ynorm = 0.0;
  // text
  std::vector<int> tokens;
  // audio
  std::vector<Vec> frame_feats;  // truncated to t_max
  std::size_t frames = 0;
};

/// Pooling weights: uniform 1/n, plus a fixed linear ramp over positions
/// when positional encoding is on. A uniform mean of per-position sums
/// only sees the multiset of inputs; the ramp makes position visible at
/// first order and the learned additive tables refine it.
std::vector<double> pool_weights(std::size_t n, bool positions) {
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  if (positions && n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const double ramp = (static_cast<double>(i) -
                           0.5 * static_cast<double>(n - 1)) /
                          static_cast<double>(n - 1);
      w[i] *= 1.0 + ramp;
    }
  }
  return w;
}

void encoder_forward(const Tensor& w1, const Tensor& b1, const Tensor& w2,
                     const Tensor& b2, EncodeCache& c) {
  const std::size_t h = w1.rows, dt = w1.cols, d = w2.rows;
  c.hact.resize(h);
  for (std::size_t j = 0; j < h; ++j) {
    double s = 0.0;
    const double* row = &w1.v[j * dt];
    for (std::size_t k = 0; k < dt; ++k) s += row[k] * c.x[k];
    c.hact[j] = std::tanh(kHiddenGain * s + b1.v[j]);
  }
  c.y.assign(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    double s = b2.v[i];
    const double* row = &w2.v[i * h];
    for (std::size_t j = 0; j < h; ++j) s += row[j] * c.hact[j];
    c.y[i] = s;
  }
  c.ynorm = std::max(norm2(c.y), kNormEps);
  c.e.resize(d);
  for (std::size_t i = 0; i < d; ++i) c.e[i] = c.y[i] / c.ynorm;
}

/// Backward through L2 normalization and the MLP; returns the gradient
/// w.r.t. the pooled input and accumulates the weight gradients.
Vec encoder_backward(const Tensor& w1, const Tensor& w2, const EncodeCache& c,
                     const Vec& de, Tensor& gw1, Tensor& gb1, Tensor& gw2,
                     Tensor& gb2) {
  const std::size_t h = w1.rows, dt = w1.cols, d = w2.rows;
  // dy = (de - e (e . de)) / ||y||
  double radial = dot(c.e, de);
  Vec dy(d);
  for (std::size_t i = 0; i < d; ++i) {
    dy[i] = (de[i] - c.e[i] * radial) / c.ynorm;
  }
  Vec dh(h, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    gb2.v[i] += dy[i];
    double* grow = &gw2.v[i * h];
    const double* wrow = &w2.v[i * h];
    for (std::size_t j = 0; j < h; ++j) {
      grow[j] += dy[i] * c.hact[j];
      dh[j] += wrow[j] * dy[i];
    }
  }
  Vec dx(dt, 0.0);
  for (std::size_t j = 0; j < h; ++j) {
    const double dpre = dh[j] * (1.0 - c.hact[j] * c.hact[j]);
    gb1.v[j] += dpre;
    const double dgain = dpre * kHiddenGain;
    double* grow = &gw1.v[j * dt];
    const double* wrow = &w1.v[j * dt];
    for (std::size_t k = 0; k < dt; ++k) {
      grow[k] += dgain * c.x[k];
      dx[k] += wrow[k] * dgain;
    }
  }
  return dx;
}

EncodeCache text_forward(const DualEncoderParams& p,
                         const std::vector<int>& tokens) {
  if (tokens.empty()) throw ModelError("encode_text: empty token list");
  const auto dt = static_cast<std::size_t>(p.config.d_tok);
  EncodeCache c;
  c.tokens = tokens;
  if (static_cast<int>(c.tokens.size()) > p.config.l_max) {
    c.tokens.resize(static_cast<std::size_t>(p.config.l_max));
  }
  c.pw = pool_weights(c.tokens.size(), p.config.use_positions);
  c.x.assign(dt, 0.0);
  for (std::size_t i = 0; i < c.tokens.size(); ++i) {
    const auto tok = static_cast<std::size_t>(c.tokens[i]);
    for (std::size_t k = 0; k < dt; ++k) {
      const double u = p.tok_emb.at(tok, k) +
                       (p.config.use_positions ? p.tok_pos.at(i, k) : 0.0);
      c.x[k] += c.pw[i] * u;
    }
  }
  encoder_forward(p.t_w1, p.t_b1, p.t_w2, p.t_b2, c);
  return c;
}

EncodeCache audio_forward(const DualEncoderParams& p,
                          const FrameFeatures& feats) {
  const auto dt = static_cast<std::size_t>(p.config.d_tok);
  const auto bands = static_cast<std::size_t>(p.config.bands);
  std::size_t frames = feats.log_band_energy.size();
  if (frames == 0) throw ModelError("encode_audio: no frames");
  if (frames > static_cast<std::size_t>(p.config.t_max)) {
    frames = static_cast<std::size_t>(p.config.t_max);
  }
  if (feats.log_band_energy[0].size() != bands) {
    throw ModelError("encode_audio: feature band count mismatch");
  }
  EncodeCache c;
  c.frames = frames;
  c.pw = pool_weights(frames, p.config.use_positions);
  c.x.assign(dt, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    c.frame_feats.push_back(feats.log_band_energy[t]);
    for (std::size_t k = 0; k < dt; ++k) {
      double s = 0.0;
      const double* row = &p.a_proj.v[k * bands];
      for (std::size_t b = 0; b < bands; ++b) s += row[b] * c.frame_feats[t][b];
      const double u = s + (p.config.use_positions ? p.a_pos.at(t, k) : 0.0);
      c.x[k] += c.pw[t] * u;
    }
  }
  encoder_forward(p.a_w1, p.a_b1, p.a_w2, p.a_b2, c);
  return c;
}

void text_backward(const DualEncoderParams& p, const EncodeCache& c,
                   const Vec& de, Gradients& g) {
  Vec dx = encoder_backward(p.t_w1, p.t_w2, c, de, *g.find("t_w1"),
                            *g.find("t_b1"), *g.find("t_w2"), *g.find("t_b2"));
  Tensor& gemb = *g.find("tok_emb");
  Tensor& gpos = *g.find("tok_pos");
  const auto dt = static_cast<std::size_t>(p.config.d_tok);
  for (std::size_t i = 0; i < c.tokens.size(); ++i) {
    const auto tok = static_cast<std::size_t>(c.tokens[i]);
    for (std::size_t k = 0; k < dt; ++k) {
      const double du = c.pw[i] * dx[k];
      gemb.at(tok, k) += du;
      if (p.config.use_positions) gpos.at(i, k) += du;
    }
  }
}

void audio_backward(const DualEncoderParams& p, const EncodeCache& c,
                    const Vec& de, Gradients& g) {
  Vec dx = encoder_backward(p.a_w1, p.a_w2, c, de, *g.find("a_w1"),
                            *g.find("a_b1"), *g.find("a_w2"), *g.find("a_b2"));
  const auto dt = static_cast<std::size_t>(p.config.d_tok);
  const auto bands = static_cast<std::size_t>(p.config.bands);
  Tensor& gproj = *g.find("a_proj");
  Tensor* gpos = p.config.use_positions ? g.find("a_pos") : nullptr;
  for (std::size_t t = 0; t < c.frames; ++t) {
    for (std::size_t k = 0; k < dt; ++k) {
      const double du = c.pw[t] * dx[k];
      double* grow = &gproj.v[k * bands];
      for (std::size_t b = 0; b < bands; ++b) {
        grow[b] += du * c.frame_feats[t][b];
      }
      if (gpos) gpos->at(t, k) += du;
    }
  }
}

}  // namespace

Vec encode_text(const DualEncoderParams& p, const std::vector<int>& tokens) {
  return text_forward(p, tokens).e;
}

Vec encode_audio(const DualEncoderParams& p, const FrameFeatures& feats) {
  return audio_forward(p, feats).e;
}

BackwardResult backward(const DualEncoderParams& p,
                        const std::vector<BatchItem>& batch,
                        const LossConfig& cfg) {
  const std::size_t b = batch.size();
  if (b == 0) throw ModelError("backward: empty batch");

  std::vector<EncodeCache> audio_caches, text_caches;
  std::vector<std::vector<EncodeCache>> pos_caches(b), neg_caches(b);
  audio_caches.reserve(b);
  text_caches.reserve(b);
  for (const auto& item : batch) {
    audio_caches.push_back(audio_forward(p, item.feats));
    text_caches.push_back(text_forward(p, item.caption_tokens));
  }
  std::vector<std::size_t> anchors;
  if (cfg.lambda != 0.0) {
    for (std::size_t i = 0; i < b; ++i) {
      if (batch[i].pos_tokens.size() == 2 && batch[i].neg_tokens.size() == 2) {
        anchors.push_back(i);
        for (const auto& t : batch[i].pos_tokens) {
          pos_caches[i].push_back(text_forward(p, t));
        }
        for (const auto& t : batch[i].neg_tokens) {
          neg_caches[i].push_back(text_forward(p, t));
        }
      }
    }
  }

  Mat ea, et;
  for (const auto& c : audio_caches) ea.push_back(c.e);
  for (const auto& c : text_caches) et.push_back(c.e);

  BackwardResult res;
  res.grads = Gradients::zeros_like(p);
  res.loss_ta = nt_xent(ea, et, cfg.tau);

  // NT-Xent gradient w.r.t. the similarity matrix (s = dot of unit vectors;
  // the radial cosine term vanishes after the normalization backward's
  // tangent projection).
  Mat s(b, Vec(b));
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) s[i][j] = dot(ea[i], et[j]);
  }
  Mat ds(b, Vec(b, 0.0));
  const double scale = 1.0 / (2.0 * static_cast<double>(b) * cfg.tau);
  for (std::size_t i = 0; i < b; ++i) {
    // row softmax (audio i against all texts)
    double row_max = s[i][0];
    for (std::size_t j = 0; j < b; ++j) row_max = std::max(row_max, s[i][j]);
    double row_sum = 0.0;
    for (std::size_t j = 0; j < b; ++j) row_sum += std::exp((s[i][j] - row_max) / cfg.tau);
    for (std::size_t j = 0; j < b; ++j) {
      const double pr = std::exp((s[i][j] - row_max) / cfg.tau) / row_sum;
      ds[i][j] += scale * (pr - (i == j ? 1.0 : 0.0));
    }
    // column softmax (text i against all audios)
    double col_max = s[0][i];
    for (std::size_t j = 0; j < b; ++j) col_max = std::max(col_max, s[j][i]);
    double col_sum = 0.0;
    for (std::size_t j = 0; j < b; ++j) col_sum += std::exp((s[j][i] - col_max) / cfg.tau);
    for (std::size_t j = 0; j < b; ++j) {
      const double pc = std::exp((s[j][i] - col_max) / cfg.tau) / col_sum;
      ds[j][i] += scale * (pc - (i == j ? 1.0 : 0.0));
    }
  }

  std::vector<Vec> de_a(b, Vec(static_cast<std::size_t>(p.config.d), 0.0));
  std::vector<Vec> de_t(b, Vec(static_cast<std::size_t>(p.config.d), 0.0));
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      const double w = ds[i][j];
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < de_a[i].size(); ++k) {
        de_a[i][k] += w * et[j][k];
        de_t[j][k] += w * ea[i][k];
      }
    }
  }

  // Text-text hinge.
  std::vector<std::vector<Vec>> de_pos(b), de_neg(b);
  if (!anchors.empty()) {
    Mat anchor_embs;
    std::vector<Mat> pos_embs, neg_embs;
    for (std::size_t i : anchors) {
      anchor_embs.push_back(et[i]);
      pos_embs.push_back({pos_caches[i][0].e, pos_caches[i][1].e});
      neg_embs.push_back({neg_caches[i][0].e, neg_caches[i][1].e});
    }
    res.loss_tt = text_text(anchor_embs, pos_embs, neg_embs, cfg.margin);

    const double coeff =
        cfg.lambda / (2.0 * static_cast<double>(anchors.size()));
    for (std::size_t ai = 0; ai < anchors.size(); ++ai) {
      const std::size_t i = anchors[ai];
      de_pos[i].assign(2, Vec(static_cast<std::size_t>(p.config.d), 0.0));
      de_neg[i].assign(2, Vec(static_cast<std::size_t>(p.config.d), 0.0));
      for (std::size_t k = 0; k < 2; ++k) {
        const double sp = cosine(et[i], pos_caches[i][k].e);
        const double sn = cosine(et[i], neg_caches[i][k].e);
        if (cfg.margin - sp + sn <= 0.0) continue;
        for (std::size_t z = 0; z < de_t[i].size(); ++z) {
          de_t[i][z] += coeff * (neg_caches[i][k].e[z] - pos_caches[i][k].e[z]);
          de_pos[i][k][z] -= coeff * et[i][z];
          de_neg[i][k][z] += coeff * et[i][z];
        }
      }
    }
  }

  res.loss = res.loss_ta + cfg.lambda * res.loss_tt;

  for (std::size_t i = 0; i < b; ++i) {
    audio_backward(p, audio_caches[i], de_a[i], res.grads);
    text_backward(p, text_caches[i], de_t[i], res.grads);
    if (!de_pos[i].empty()) {
      for (std::size_t k = 0; k < 2; ++k) {
        text_backward(p, pos_caches[i][k], de_pos[i][k], res.grads);
        text_backward(p, neg_caches[i][k], de_neg[i][k], res.grads);
      }
    }
  }
  return res;
}

double forward_loss(const DualEncoderParams& p,
                    const std::vector<BatchItem>& batch, const LossConfig& cfg) {
  Mat ea, et;
  for (const auto& item : batch) {
    ea.push_back(encode_audio(p, item.feats));
    et.push_back(encode_text(p, item.caption_tokens));
  }
  double loss = nt_xent(ea, et, cfg.tau);
  if (cfg.lambda != 0.0) {
    Mat anchor_embs;
    std::vector<Mat> pos_embs, neg_embs;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (batch[i].pos_tokens.size() != 2 || batch[i].neg_tokens.size() != 2) {
        continue;
      }
      anchor_embs.push_back(et[i]);
      Mat pe, ne;
      for (const auto& t : batch[i].pos_tokens) pe.push_back(encode_text(p, t));
      for (const auto& t : batch[i].neg_tokens) ne.push_back(encode_text(p, t));
      pos_embs.push_back(std::move(pe));
      neg_embs.push_back(std::move(ne));
    }
    if (!anchor_embs.empty()) {
      loss += cfg.lambda * text_text(anchor_embs, pos_embs, neg_embs, cfg.margin);
    }
  }
  return loss;
}

// ---- checkpoints ----

namespace {

ordered_json tensor_to_json(const Tensor& t) {
  ordered_json j;
  j["rows"] = t.rows;
  j["cols"] = t.cols;
  j["v"] = t.v;
  return j;
}

Tensor tensor_from_json(const ordered_json& j) {
  Tensor t(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  t.v = j.at("v").get<std::vector<double>>();
  if (t.v.size() != t.rows * t.cols) {
    throw ModelError("checkpoint tensor shape mismatch");
  }
  return t;
}

}  // namespace

std::string serialize_checkpoint(const Checkpoint& ckpt) {
  ordered_json j;
  j["format"] = "temporet-checkpoint";
  j["version"] = 1;
  const auto& cfg = ckpt.params.config;
  j["config"] = {{"d", cfg.d},         {"d_tok", cfg.d_tok},
                 {"h", cfg.h},         {"l_max", cfg.l_max},
                 {"t_max", cfg.t_max}, {"bands", cfg.bands},
                 {"use_positions", cfg.use_positions}};
  j["loss"] = {{"tau", ckpt.loss.tau},
               {"lambda", ckpt.loss.lambda},
               {"margin", ckpt.loss.margin}};
  j["vocab"] = ckpt.params.vocab.words;
  j["val_history"] = ckpt.val_history;
  ordered_json tensors;
  for (const auto& [name, t] : ckpt.params.blocks()) {
    tensors[name] = tensor_to_json(*t);
  }
  j["tensors"] = tensors;
  return j.dump() + "\n";
}

Checkpoint parse_checkpoint(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  if (j.value("format", "") != "temporet-checkpoint") {
    throw ModelError("not a checkpoint file");
  }
  Checkpoint ckpt;
  const auto& cj = j.at("config");
  ModelConfig cfg;
  cfg.d = cj.at("d").get<int>();
  cfg.d_tok = cj.at("d_tok").get<int>();
  cfg.h = cj.at("h").get<int>();
  cfg.l_max = cj.at("l_max").get<int>();
  cfg.t_max = cj.at("t_max").get<int>();
  cfg.bands = cj.at("bands").get<int>();
  cfg.use_positions = cj.at("use_positions").get<bool>();
  Vocabulary vocab;
  vocab.words = j.at("vocab").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < vocab.words.size(); ++i) {
    vocab.index[vocab.words[i]] = static_cast<int>(i);
  }
  ckpt.params = DualEncoderParams::init(cfg, vocab, 0);
  for (auto& [name, t] : ckpt.params.blocks()) {
    *t = tensor_from_json(j.at("tensors").at(name));
  }
  ckpt.loss.tau = j.at("loss").at("tau").get<double>();
  ckpt.loss.lambda = j.at("loss").at("lambda").get<double>();
  ckpt.loss.margin = j.at("loss").at("margin").get<double>();
  if (j.contains("val_history")) {
    ckpt.val_history = j.at("val_history").get<std::vector<double>>();
  }
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write checkpoint '" + path + "'");
  out << serialize_checkpoint(ckpt);
  if (!out) throw ModelError("I/O failure writing '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open checkpoint '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

}  // namespace temporet
