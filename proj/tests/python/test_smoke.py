# Copyright 2026 The Temporet Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import temporet as tr


def test_cue_detection_and_order():
    ann = tr.detect_cues("A dog barking followed by rain falling")
    assert [c.cue for c in ann.cues] == ["FOLLOWED_BY"]
    assert ann.cues[0].cue_class == "future"
    assert ann.single_directional_cue()
    assert tr.semantic_order(ann) == ("A dog barking", "rain falling")

    past = tr.detect_cues("rain falling after a dog barking")
    assert tr.semantic_order(past) == ("a dog barking", "rain falling")


def test_transforms_are_involutive():
    text = "a dog barking followed by rain falling"
    # rewrites come back sentence-cased, so compare case-insensitively
    assert tr.rev(tr.rev(text)).lower() == text
    assert tr.rep(tr.rep(text)).lower() == text
    # rev swaps clauses, rep swaps the cue class; both flip the order
    first, second = tr.semantic_order(tr.detect_cues(tr.rev(text)))
    assert (first.lower(), second.lower()) == ("rain falling", "a dog barking")
    pos, neg = tr.contrastive_set(text)
    assert len(pos) == 2 and len(neg) == 2


def test_manifest_round_trip():
    rec = tr.ManifestRecord()
    rec.id = "r1"
    rec.split = "train"
    rec.captions = ["dog barking then rain falling"]
    rec.audio_path = "r1.wav"
    m = tr.DatasetManifest()
    m.records = [rec]
    back = tr.parse_manifest(tr.serialize_manifest(m))
    assert back.records[0].captions == rec.captions
    assert "THEN,future,1" in tr.histogram_csv(m)


def test_generation_and_features():
    bank = tr.synth_bank(4, 3, 8000, 1)
    assert len(bank) == 4
    manifest = tr.generate(bank, tr.DatasetSizes(8, 2, 2), 2.0, 1)
    assert len(manifest.records) == 12
    clip = tr.materialize_record(manifest.records[0], bank)
    assert clip.duration_s() == pytest.approx(10.0)
    feats = tr.features(clip, 0.5, 8)
    assert len(feats.log_band_energy) == 20
    assert len(feats.log_band_energy[0]) == 8


def test_losses():
    e = [[1.0, 0.0], [0.0, 1.0]]
    perfect = tr.nt_xent(e, e, 0.07)
    assert perfect < tr.nt_xent(e, [[0.0, 1.0], [1.0, 0.0]], 0.07)
    assert tr.text_text(e, [e, e], [e, e], 0.0) == 0.0


def test_train_eval_round_trip(tmp_path):
    bank = tr.synth_bank(4, 3, 8000, 1)
    manifest = tr.generate(bank, tr.DatasetSizes(8, 2, 2), 2.0, 1)
    cfg = tr.TrainConfig()
    cfg.epochs = 2
    cfg.batch = 4
    cfg.model.d = 8
    cfg.model.d_tok = 8
    cfg.model.h = 8
    cfg.model.bands = 8
    result = tr.train(manifest, bank, cfg, 1)
    assert len(result.val_history) == 2
    assert result.log_csv.startswith("epoch,train_loss")

    emb = result.best.encode_text("dog barking then rain falling")
    assert math.isclose(sum(x * x for x in emb), 1.0, rel_tol=1e-9)

    path = str(tmp_path / "ckpt.json")
    tr.save_checkpoint(result.best, path)
    ckpt = tr.load_checkpoint(path)
    assert ckpt.encode_text("dog barking then rain falling") == emb

    report = tr.evaluate([ckpt], manifest, bank, tr.EvalOptions())
    r1 = report.recall("Test", "t2a", 1)
    assert 0.0 <= r1 <= 100.0
    assert "TempTest_rev" in report.csv()


def test_recall_matches_hand_count():
    sim = [[0.9, 0.1], [0.8, 0.2]]
    assert tr.recall_at_k(sim, [{0}, {1}], 1) == 50.0
    assert tr.recall_at_k(sim, [{0}, {1}], 2) == 100.0


def test_audit_mock():
    item = tr.GroundedItem()
    item.description = "dog barking followed by rain falling"
    item.components = [
        tr.SoundEvent("dog barking", 0.0, 5.0),
        tr.SoundEvent("rain falling", 4.5, 10.0),
    ]
    assert tr.mock_audit(item).label == "Correct"
    prompt = tr.build_prompt(item, "D: {description}\n{components}")
    assert "dog barking: 0.0, 5.0;" in prompt
    csv = tr.audit_csv([item])
    assert csv.splitlines()[1].startswith("Total,1,0,0")
