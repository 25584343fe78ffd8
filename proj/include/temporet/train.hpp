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

#ifndef TEMPORET_TRAIN_HPP
#define TEMPORET_TRAIN_HPP

#include <string>
#include <vector>

#include "temporet/eval.hpp"
#include "temporet/model.hpp"
#include "temporet/syncaps.hpp"

namespace temporet {

class TrainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainConfig {
  int epochs = 40;
  int batch = 32;
  double lr = 1e-3;
  double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;
  LossConfig loss;       // loss.lambda == 0 trains with NT-Xent only
  ModelConfig model;
  std::string audio_root;  // for wav-backed records
};

struct TrainResult {
  Checkpoint best;
  std::vector<double> val_history;     // mean of val R@1 t2a / a2t per epoch
  std::string log_csv;                 // epoch,train_loss,val_r1_t2a,val_r1_a2t
};

/// One seeded run: shuffled epochs, Adam updates, validation R@1 after
/// every epoch, best-validation checkpoint returned. Single-threaded and
/// bitwise deterministic per seed.
TrainResult train(const DatasetManifest& manifest,
                  const std::vector<SoundBankEntry>& bank,
                  const TrainConfig& cfg, std::uint64_t seed);

std::vector<TrainResult> run_seeds(const DatasetManifest& manifest,
                                   const std::vector<SoundBankEntry>& bank,
                                   const TrainConfig& cfg,
                                   const std::vector<std::uint64_t>& seeds);

/// Adam with fixed step size; state shapes mirror the parameter blocks.
class AdamOptimizer {
 public:
  AdamOptimizer(const DualEncoderParams& params, double lr, double beta1,
                double beta2, double eps);
  void step(DualEncoderParams& params, const Gradients& grads);

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  Gradients m_, v_;
};

}  // namespace temporet

#endif  // TEMPORET_TRAIN_HPP
