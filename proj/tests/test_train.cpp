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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "temporet/train.hpp"

using namespace temporet;

namespace {

TrainConfig tiny_config(int epochs) {
  TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.batch = 8;
  cfg.lr = 5e-3;
  cfg.model.d = 16;
  cfg.model.d_tok = 8;
  cfg.model.h = 16;
  cfg.model.l_max = 12;
  cfg.model.t_max = 24;
  cfg.model.bands = 8;
  return cfg;
}

struct Fixture {
  std::vector<SoundBankEntry> bank = synth_bank(6, 5, 8000, 7);
  DatasetManifest manifest = generate(bank, {12, 4, 4}, 2.0, 7);
};

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("training log has the documented format") {
  Fixture f;
  TrainResult r = train(f.manifest, f.bank, tiny_config(3), 1);
  auto lines = split_lines(r.log_csv);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "epoch,train_loss,val_r1_t2a,val_r1_a2t");
  for (int e = 0; e < 3; ++e) {
    CHECK(lines[e + 1].rfind(std::to_string(e) + ",", 0) == 0);
    CHECK(std::count(lines[e + 1].begin(), lines[e + 1].end(), ',') == 3);
  }
  CHECK(r.val_history.size() == 3);
  CHECK(r.best.val_history == r.val_history);
}

TEST_CASE("training is bitwise deterministic per seed") {
  Fixture f;
  TrainResult a = train(f.manifest, f.bank, tiny_config(2), 5);
  TrainResult b = train(f.manifest, f.bank, tiny_config(2), 5);
  CHECK(a.log_csv == b.log_csv);
  CHECK(serialize_checkpoint(a.best) == serialize_checkpoint(b.best));
  TrainResult c = train(f.manifest, f.bank, tiny_config(2), 6);
  CHECK(serialize_checkpoint(c.best) != serialize_checkpoint(a.best));
}

TEST_CASE("the model memorizes a tiny set") {
  Fixture f;
  TrainConfig cfg = tiny_config(25);
  TrainResult r = train(f.manifest, f.bank, cfg, 3);
  auto lines = split_lines(r.log_csv);
  auto loss_of = [&](std::size_t i) {
    auto line = lines[i];
    auto first = line.find(',');
    return std::strtod(line.c_str() + first + 1, nullptr);
  };
  // loss drops and validation retrieval beats chance (25% at N=4)
  CHECK(loss_of(cfg.epochs) < loss_of(1));
  const double best_val =
      *std::max_element(r.val_history.begin(), r.val_history.end());
  CHECK(best_val >= 50.0);
}

TEST_CASE("best checkpoint tracks the highest mean validation recall") {
  Fixture f;
  TrainResult r = train(f.manifest, f.bank, tiny_config(6), 2);
  const double best =
      *std::max_element(r.val_history.begin(), r.val_history.end());
  // the stored history ends at the final epoch but the checkpoint is from
  // the argmax epoch; spot-check by re-evaluating the saved parameters
  EvalOptions opt;
  opt.include_rev = false;
  opt.include_rep = false;
  EvalReport rep = evaluate({r.best}, f.manifest, f.bank, opt);
  CHECK(rep.find("Test", "t2a", 1) != nullptr);
  CHECK(best >= r.val_history.front());
}

TEST_CASE("lambda switches the text-text term on") {
  Fixture f;
  TrainConfig cfg = tiny_config(2);
  cfg.loss.lambda = 10.0;
  TrainResult with_tt = train(f.manifest, f.bank, cfg, 4);
  cfg.loss.lambda = 0.0;
  TrainResult without = train(f.manifest, f.bank, cfg, 4);
  CHECK(with_tt.log_csv != without.log_csv);
}

TEST_CASE("empty splits are rejected") {
  Fixture f;
  DatasetManifest no_train, no_val;
  for (const auto& r : f.manifest.records) {
    if (r.split != "train") no_train.records.push_back(r);
    if (r.split != "val") no_val.records.push_back(r);
  }
  CHECK_THROWS_AS(train(no_train, f.bank, tiny_config(1), 1), TrainError);
  CHECK_THROWS_AS(train(no_val, f.bank, tiny_config(1), 1), TrainError);
}

TEST_CASE("records without recipe or audio are rejected") {
  Fixture f;
  DatasetManifest broken = f.manifest;
  broken.records[0].meta.erase("gen");
  broken.records[0].audio_path.clear();
  CHECK_THROWS_AS(train(broken, f.bank, tiny_config(1), 1), TrainError);
}

TEST_CASE("run_seeds matches individual runs") {
  Fixture f;
  auto results = run_seeds(f.manifest, f.bank, tiny_config(2), {1, 2});
  REQUIRE(results.size() == 2);
  CHECK(results[0].log_csv == train(f.manifest, f.bank, tiny_config(2), 1).log_csv);
  CHECK(results[1].log_csv == train(f.manifest, f.bank, tiny_config(2), 2).log_csv);
  CHECK_THROWS_AS(run_seeds(f.manifest, f.bank, tiny_config(2), {}), TrainError);
}

TEST_CASE("adam moves parameters against the gradient") {
  ModelConfig mc;
  mc.d = 4;
  mc.d_tok = 3;
  mc.h = 4;
  mc.bands = 2;
  DatasetManifest m;
  m.records.push_back({"a", "", "train", {"dog barking"}, {}, {}});
  auto p = DualEncoderParams::init(mc, build_vocabulary(m, CueLexicon::standard()), 1);
  Gradients g = Gradients::zeros_like(p);
  g.blocks[0].second.v[0] = 2.5;
  const double before = p.blocks()[0].second->v[0];
  AdamOptimizer opt(p, 0.01, 0.9, 0.999, 1e-8);
  opt.step(p, g);
  const double after = p.blocks()[0].second->v[0];
  // first step is lr * sign(grad) up to eps
  CHECK(after == doctest::Approx(before - 0.01).epsilon(1e-4));
}
