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

#include "temporet/losses.hpp"

#include <cmath>

namespace temporet {

double dot(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

double cosine(const Vec& u, const Vec& v) {
  const double nu = norm2(u);
  const double nv = norm2(v);
  if (nu == 0.0 || nv == 0.0) {
    throw std::invalid_argument("cosine: zero-norm input");
  }
  return dot(u, v) / (nu * nv);
}

double nt_xent(const Mat& audio_embs, const Mat& text_embs, double tau) {
  const std::size_t b = audio_embs.size();
  if (b != text_embs.size() || b == 0) {
    throw std::invalid_argument("nt_xent: batch shape mismatch");
  }
  if (tau <= 0.0) throw std::invalid_argument("nt_xent: tau must be positive");

  Mat s(b, Vec(b));
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      s[i][j] = cosine(audio_embs[i], text_embs[j]);
    }
  }
  // log-sum-exp with max subtraction keeps exp() in range for small tau
  double loss = 0.0;
  for (std::size_t i = 0; i < b; ++i) {
    double row_max = s[i][0], col_max = s[0][i];
    for (std::size_t j = 0; j < b; ++j) {
      row_max = std::max(row_max, s[i][j]);
      col_max = std::max(col_max, s[j][i]);
    }
    double row_sum = 0.0, col_sum = 0.0;
    for (std::size_t j = 0; j < b; ++j) {
      row_sum += std::exp((s[i][j] - row_max) / tau);
      col_sum += std::exp((s[j][i] - col_max) / tau);
    }
    loss -= (s[i][i] - row_max) / tau - std::log(row_sum);
    loss -= (s[i][i] - col_max) / tau - std::log(col_sum);
  }
  return loss / (2.0 * static_cast<double>(b));
}

double text_text(const Mat& anchor_embs, const std::vector<Mat>& pos_embs,
                 const std::vector<Mat>& neg_embs, double margin) {
  const std::size_t n = anchor_embs.size();
  if (pos_embs.size() != n || neg_embs.size() != n) {
    throw std::invalid_argument("text_text: anchor/pos/neg count mismatch");
  }
  if (n == 0) return 0.0;
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pos_embs[i].size() != 2 || neg_embs[i].size() != 2) {
      throw std::invalid_argument("text_text: expected 2 positives and 2 negatives");
    }
    for (std::size_t k = 0; k < 2; ++k) {
      const double sp = cosine(anchor_embs[i], pos_embs[i][k]);
      const double sn = cosine(anchor_embs[i], neg_embs[i][k]);
      loss += std::max(0.0, margin - sp + sn);
    }
  }
  return loss / (2.0 * static_cast<double>(n));
}

double combined(const Mat& audio_embs, const Mat& text_embs,
                const Mat& anchor_embs, const std::vector<Mat>& pos_embs,
                const std::vector<Mat>& neg_embs, const LossConfig& cfg) {
  double loss = nt_xent(audio_embs, text_embs, cfg.tau);
  if (cfg.lambda != 0.0 && !anchor_embs.empty()) {
    loss += cfg.lambda * text_text(anchor_embs, pos_embs, neg_embs, cfg.margin);
  }
  return loss;
}

}  // namespace temporet
