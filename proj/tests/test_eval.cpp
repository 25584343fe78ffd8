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
#include <numeric>

#include "temporet/eval.hpp"
#include "temporet/rng.hpp"
#include "temporet/train.hpp"

using namespace temporet;

namespace {

/// Independent oracle: rank the whole gallery by (similarity desc, index
/// asc) and count queries whose top-k prefix hits the relevance set.
double recall_oracle(const Mat& sim,
                     const std::vector<std::set<std::size_t>>& rel, int k) {
  long hits = 0;
  for (std::size_t q = 0; q < sim.size(); ++q) {
    std::vector<std::size_t> order(sim[q].size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (sim[q][a] != sim[q][b]) return sim[q][a] > sim[q][b];
      return a < b;
    });
    for (int i = 0; i < k && i < static_cast<int>(order.size()); ++i) {
      if (rel[q].count(order[i])) {
        ++hits;
        break;
      }
    }
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(sim.size());
}

Mat random_sim(std::size_t n, Rng& rng) {
  Mat m(n, Vec(n));
  for (auto& row : m) {
    for (auto& v : row) v = rng.uniform(-1.0, 1.0);
  }
  return m;
}

struct Fixture {
  std::vector<SoundBankEntry> bank = synth_bank(6, 5, 8000, 7);
  DatasetManifest manifest = generate(bank, {10, 2, 5}, 2.0, 11);

  Checkpoint checkpoint(std::uint64_t seed) const {
    TrainConfig cfg;
    cfg.epochs = 1;
    cfg.batch = 8;
    cfg.model.d = 12;
    cfg.model.d_tok = 6;
    cfg.model.h = 12;
    cfg.model.l_max = 12;
    cfg.model.t_max = 24;
    cfg.model.bands = 8;
    return train(manifest, bank, cfg, seed).best;
  }
};

}  // namespace

TEST_CASE("recall_at_k agrees with the full-sort oracle") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Mat sim = random_sim(12, rng);
    std::vector<std::set<std::size_t>> rel(12);
    for (std::size_t q = 0; q < 12; ++q) {
      rel[q].insert(rng.below(12));
      if (trial % 3 == 0) rel[q].insert(rng.below(12));
    }
    for (int k : {1, 3, 5, 12}) {
      CHECK(recall_at_k(sim, rel, k) == recall_oracle(sim, rel, k));
    }
  }
}

TEST_CASE("ties are broken by the lower gallery index") {
  Mat sim = {{0.5, 0.5, 0.5}};
  CHECK(recall_at_k(sim, {{0}}, 1) == 100.0);
  CHECK(recall_at_k(sim, {{1}}, 1) == 0.0);
  CHECK(recall_at_k(sim, {{1}}, 2) == 100.0);
  CHECK(recall_at_k(sim, {{2}}, 2) == 0.0);
}

TEST_CASE("recall_at_k validates its input") {
  CHECK_THROWS_AS(recall_at_k({}, {}, 1), EvalError);
  CHECK_THROWS_AS(recall_at_k({{1.0}}, {{0}}, 0), EvalError);
  CHECK_THROWS_AS(recall_at_k({{1.0}}, {}, 1), EvalError);
  CHECK_THROWS_AS(recall_at_k({{1.0}}, {std::set<std::size_t>{}}, 1), EvalError);
}

TEST_CASE("evaluate produces paired subsets and all cutoffs") {
  Fixture f;
  auto ck = f.checkpoint(1);
  EvalReport r = evaluate({ck, f.checkpoint(2)}, f.manifest, f.bank, {});
  for (const char* subset : {"Test", "TempTest", "TempTest_rev", "TempTest_rep"}) {
    for (const char* dir : {"t2a", "a2t"}) {
      for (int k : {1, 5, 10}) {
        const auto* e = r.find(subset, dir, k);
        REQUIRE(e != nullptr);
        CHECK(e->per_seed.size() == 2);
        const double mean =
            (e->per_seed[0] + e->per_seed[1]) / 2.0;
        CHECK(e->mean == doctest::Approx(mean).epsilon(1e-12));
        CHECK(e->mean >= 0.0);
        CHECK(e->mean <= 100.0);
      }
    }
  }
  // generated captions all carry a single directional cue, so TempTest
  // coincides with Test
  CHECK(r.find("TempTest", "t2a", 1)->mean == r.find("Test", "t2a", 1)->mean);
  // recall is monotone in k
  CHECK(r.find("Test", "t2a", 5)->mean >= r.find("Test", "t2a", 1)->mean);
  CHECK(r.find("Test", "t2a", 10)->mean >= r.find("Test", "t2a", 5)->mean);
}

TEST_CASE("gap rows match a recomputation from the entries") {
  Fixture f;
  EvalReport r = evaluate({f.checkpoint(1)}, f.manifest, f.bank, {});
  auto gaps = temporal_gap(r);
  REQUIRE(gaps.size() == r.gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    CHECK(gaps[i].direction == r.gaps[i].direction);
    CHECK(gaps[i].d_rev == r.gaps[i].d_rev);
    CHECK(gaps[i].d_rep == r.gaps[i].d_rep);
    const auto* base = r.find("TempTest", gaps[i].direction, 1);
    const auto* rev = r.find("TempTest_rev", gaps[i].direction, 1);
    CHECK(gaps[i].d_rev == doctest::Approx(base->mean - rev->mean).epsilon(1e-12));
  }
}

TEST_CASE("subset toggles drop the derived rows") {
  Fixture f;
  EvalOptions opt;
  opt.include_rev = false;
  opt.include_rep = false;
  EvalReport r = evaluate({f.checkpoint(1)}, f.manifest, f.bank, opt);
  CHECK(r.find("TempTest_rev", "t2a", 1) == nullptr);
  CHECK(r.find("TempTest_rep", "t2a", 1) == nullptr);
  CHECK(r.find("TempTest", "t2a", 1) != nullptr);
  for (const auto& g : r.gaps) {
    CHECK(g.d_rev == 0.0);
    CHECK(g.d_rep == 0.0);
  }
}

TEST_CASE("records without applicable captions leave TempTest empty") {
  Fixture f;
  DatasetManifest joint = f.manifest;
  for (auto& r : joint.records) {
    if (r.split == "test") r.captions = {"dog barking while rain falling"};
  }
  EvalReport r = evaluate({f.checkpoint(1)}, joint, f.bank, {});
  CHECK(r.find("Test", "t2a", 1) != nullptr);
  CHECK(r.find("TempTest", "t2a", 1) == nullptr);
}

TEST_CASE("evaluate validates its input") {
  Fixture f;
  CHECK_THROWS_AS(evaluate({}, f.manifest, f.bank, {}), EvalError);
  DatasetManifest no_test;
  for (const auto& r : f.manifest.records) {
    if (r.split != "test") no_test.records.push_back(r);
  }
  CHECK_THROWS_AS(evaluate({f.checkpoint(1)}, no_test, f.bank, {}), EvalError);
}

TEST_CASE("report CSV round-trips") {
  Fixture f;
  EvalReport r = evaluate({f.checkpoint(1), f.checkpoint(2)}, f.manifest,
                          f.bank, {});
  const std::string csv = report_csv(r);
  EvalReport back = report_from_csv(csv);
  CHECK(report_csv(back) == csv);
  REQUIRE(back.entries.size() == r.entries.size());
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    CHECK(back.entries[i].subset == r.entries[i].subset);
    CHECK(back.entries[i].direction == r.entries[i].direction);
    CHECK(back.entries[i].k == r.entries[i].k);
    CHECK(back.entries[i].mean == doctest::Approx(r.entries[i].mean).epsilon(1e-4));
    CHECK(back.entries[i].per_seed.size() == r.entries[i].per_seed.size());
  }
  CHECK(back.notes == r.notes);
  REQUIRE(back.gaps.size() == r.gaps.size());
  for (std::size_t i = 0; i < r.gaps.size(); ++i) {
    CHECK(back.gaps[i].d_rev == doctest::Approx(r.gaps[i].d_rev).epsilon(1e-4));
  }
  // the human-readable table mentions every subset
  const std::string table = report_table(r);
  for (const char* s : {"Test", "TempTest", "TempTest_rev", "TempTest_rep",
                        "gap"}) {
    CHECK(table.find(s) != std::string::npos);
  }
}
