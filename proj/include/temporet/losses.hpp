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

#ifndef TEMPORET_LOSSES_HPP
#define TEMPORET_LOSSES_HPP

#include <stdexcept>
#include <vector>

#include "temporet/corpus.hpp"

namespace temporet {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major list of vectors

double dot(const Vec& u, const Vec& v);
double norm2(const Vec& v);

/// Cosine similarity; throws on zero-norm input.
double cosine(const Vec& u, const Vec& v);

/// Bidirectional temperature-scaled cross-entropy over matched rows.
/// audio_embs[i] and text_embs[i] form the positive pair.
double nt_xent(const Mat& audio_embs, const Mat& text_embs, double tau);

/// Margin hinge over anchors with two positives and two negatives each:
/// (1/2N) sum_n sum_k max(0, margin - s(anchor,pos_k) + s(anchor,neg_k)).
/// pos_embs[n] / neg_embs[n] hold the two rewrites of anchor n.
double text_text(const Mat& anchor_embs, const std::vector<Mat>& pos_embs,
                 const std::vector<Mat>& neg_embs, double margin);

/// nt_xent + lambda * text_text.
double combined(const Mat& audio_embs, const Mat& text_embs,
                const Mat& anchor_embs, const std::vector<Mat>& pos_embs,
                const std::vector<Mat>& neg_embs, const LossConfig& cfg);

}  // namespace temporet

#endif  // TEMPORET_LOSSES_HPP
