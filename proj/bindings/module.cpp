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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "temporet/audio.hpp"
#include "temporet/audit.hpp"
#include "temporet/corpus.hpp"
#include "temporet/cue.hpp"
#include "temporet/eval.hpp"
#include "temporet/losses.hpp"
#include "temporet/model.hpp"
#include "temporet/syncaps.hpp"
#include "temporet/train.hpp"
#include "temporet/transform.hpp"

namespace py = pybind11;
using namespace temporet;

namespace {

Cue cue_from_name(const std::string& name) {
  for (Cue c : kOrderedCues) {
    if (cue_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown cue name: " + name);
}

RepMap rep_map_of(bool corrected) {
  return RepMap::standard(corrected ? RepMap::Mode::Corrected
                                    : RepMap::Mode::PaperCompat);
}

}  // namespace

PYBIND11_MODULE(_temporet, m) {
  m.doc() = "Temporal text-audio retrieval toolkit (native core)";

  py::register_exception<ManifestError>(m, "ManifestError");
  py::register_exception<TransformError>(m, "TransformError");
  py::register_exception<AudioError>(m, "AudioError");
  py::register_exception<SyncapsError>(m, "SyncapsError");
  py::register_exception<ModelError>(m, "ModelError");
  py::register_exception<TrainError>(m, "TrainError");
  py::register_exception<EvalError>(m, "EvalError");
  py::register_exception<AuditError>(m, "AuditError");

  // ---- corpus ----
  py::class_<SoundEvent>(m, "SoundEvent")
      .def(py::init<>())
      .def(py::init([](const std::string& label, double onset, double offset) {
             return SoundEvent{label, onset, offset};
           }),
           py::arg("label"), py::arg("onset_s"), py::arg("offset_s"))
      .def_readwrite("label", &SoundEvent::label)
      .def_readwrite("onset_s", &SoundEvent::onset_s)
      .def_readwrite("offset_s", &SoundEvent::offset_s);

  py::class_<ManifestRecord>(m, "ManifestRecord")
      .def(py::init<>())
      .def_readwrite("id", &ManifestRecord::id)
      .def_readwrite("audio_path", &ManifestRecord::audio_path)
      .def_readwrite("split", &ManifestRecord::split)
      .def_readwrite("captions", &ManifestRecord::captions)
      .def_readwrite("events", &ManifestRecord::events)
      .def_readwrite("meta", &ManifestRecord::meta);

  py::class_<DatasetManifest>(m, "DatasetManifest")
      .def(py::init<>())
      .def_readwrite("records", &DatasetManifest::records);

  m.def("load_manifest", &load_manifest, py::arg("path"));
  m.def("save_manifest", &save_manifest, py::arg("manifest"), py::arg("path"));
  m.def("parse_manifest", &parse_manifest, py::arg("jsonl"));
  m.def("serialize_manifest", &serialize_manifest, py::arg("manifest"));
  m.def("validate_manifest", &validate_manifest, py::arg("manifest"));

  // ---- cues ----
  py::class_<CueMatch>(m, "CueMatch")
      .def_readonly("surface", &CueMatch::surface)
      .def_property_readonly("cue",
                             [](const CueMatch& c) { return cue_name(c.cue); })
      .def_property_readonly(
          "cue_class", [](const CueMatch& c) { return cue_class_name(c.cls); })
      .def_readonly("begin", &CueMatch::begin)
      .def_readonly("end", &CueMatch::end);

  py::class_<CaptionAnnotation>(m, "CaptionAnnotation")
      .def_readonly("text", &CaptionAnnotation::text)
      .def_readonly("cues", &CaptionAnnotation::cues)
      .def_readonly("events_text_order", &CaptionAnnotation::events_text_order)
      .def("single_directional_cue",
           &CaptionAnnotation::single_directional_cue);

  m.def(
      "detect_cues",
      [](const std::string& text, bool before_is_past) {
        return detect_cues(text, CueLexicon::standard(before_is_past));
      },
      py::arg("text"), py::arg("before_is_past") = false);
  m.def("semantic_order", [](const CaptionAnnotation& c) {
    return semantic_order(c);
  });
  m.def(
      "histogram_csv",
      [](const DatasetManifest& mf) {
        const CueLexicon lex = CueLexicon::standard();
        return histogram_csv(histogram(mf, lex), lex);
      },
      py::arg("manifest"));

  // ---- transforms ----
  m.def(
      "rev",
      [](const std::string& text) {
        const CueLexicon lex = CueLexicon::standard();
        return rev(detect_cues(text, lex), lex).text;
      },
      py::arg("text"));
  m.def(
      "rep",
      [](const std::string& text, bool corrected) {
        const CueLexicon lex = CueLexicon::standard();
        return rep(detect_cues(text, lex), rep_map_of(corrected), lex).text;
      },
      py::arg("text"), py::arg("corrected") = false);
  m.def(
      "contrastive_set",
      [](const std::string& text) {
        const CueLexicon lex = CueLexicon::standard();
        auto s = make_contrastive_set(detect_cues(text, lex), lex);
        return py::make_tuple(s.positives, s.negatives);
      },
      py::arg("text"));
  m.def(
      "uniformize",
      [](const DatasetManifest& mf, std::uint64_t seed) {
        return uniformize(mf, CueLexicon::standard(), seed);
      },
      py::arg("manifest"), py::arg("seed"));
  m.def(
      "transform_manifest",
      [](const DatasetManifest& mf, const std::string& mode, bool corrected) {
        return transform_manifest(mf, mode, rep_map_of(corrected),
                                  CueLexicon::standard());
      },
      py::arg("manifest"), py::arg("mode"), py::arg("corrected") = false);

  // ---- audio ----
  py::class_<AudioClip>(m, "AudioClip")
      .def(py::init<>())
      .def_readwrite("samples", &AudioClip::samples)
      .def_readwrite("sample_rate_hz", &AudioClip::sample_rate_hz)
      .def_readwrite("id", &AudioClip::id)
      .def("duration_s", &AudioClip::duration_s);

  py::class_<SoundBankEntry>(m, "SoundBankEntry")
      .def_readonly("label", &SoundBankEntry::label)
      .def_readonly("description", &SoundBankEntry::description)
      .def_readonly("clips", &SoundBankEntry::clips);

  py::class_<FrameFeatures>(m, "FrameFeatures")
      .def_readonly("log_band_energy", &FrameFeatures::log_band_energy)
      .def_readonly("frame_s", &FrameFeatures::frame_s)
      .def_readonly("band_edges_hz", &FrameFeatures::band_edges_hz);

  m.def("read_wav", &read_wav, py::arg("path"));
  m.def("write_wav", &write_wav, py::arg("clip"), py::arg("path"));
  m.def("synth_bank", &synth_bank, py::arg("n_labels"),
        py::arg("clips_per_label"), py::arg("sample_rate_hz") = 16000,
        py::arg("seed") = 0);
  m.def("features", &features, py::arg("clip"), py::arg("frame_s") = 0.5,
        py::arg("bands") = 8);
  m.def("compose_pair", &compose_pair, py::arg("first"), py::arg("second"),
        py::arg("overlap_s"), py::arg("target_s") = 10.0);

  // ---- paired dataset synthesis ----
  py::class_<SyncapsSizes>(m, "DatasetSizes")
      .def(py::init<>())
      .def(py::init([](int train, int val, int test) {
             return SyncapsSizes{train, val, test};
           }),
           py::arg("train"), py::arg("val"), py::arg("test"))
      .def_readwrite("train", &SyncapsSizes::train)
      .def_readwrite("val", &SyncapsSizes::val)
      .def_readwrite("test", &SyncapsSizes::test);

  m.def(
      "caption_for",
      [](const std::string& first, const std::string& second,
         const std::string& cue) {
        return caption_for(first, second, cue_from_name(cue));
      },
      py::arg("first_desc"), py::arg("second_desc"), py::arg("cue"));
  m.def("generate", &generate, py::arg("bank"), py::arg("sizes"),
        py::arg("reuse_avg"), py::arg("seed"), py::arg("target_s") = 10.0);
  m.def("materialize_record", &materialize_record, py::arg("record"),
        py::arg("bank"));

  // ---- losses ----
  m.def("cosine", &cosine, py::arg("u"), py::arg("v"));
  m.def("nt_xent", &nt_xent, py::arg("audio_embs"), py::arg("text_embs"),
        py::arg("tau") = 0.07);
  m.def("text_text", &text_text, py::arg("anchor_embs"), py::arg("pos_embs"),
        py::arg("neg_embs"), py::arg("margin") = 0.2);

  // ---- model / training / evaluation ----
  py::class_<ModelConfig>(m, "ModelConfig")
      .def(py::init<>())
      .def_readwrite("d", &ModelConfig::d)
      .def_readwrite("d_tok", &ModelConfig::d_tok)
      .def_readwrite("h", &ModelConfig::h)
      .def_readwrite("l_max", &ModelConfig::l_max)
      .def_readwrite("t_max", &ModelConfig::t_max)
      .def_readwrite("bands", &ModelConfig::bands)
      .def_readwrite("use_positions", &ModelConfig::use_positions);

  py::class_<LossConfig>(m, "LossConfig")
      .def(py::init<>())
      .def_readwrite("tau", &LossConfig::tau)
      .def_readwrite("lambda_", &LossConfig::lambda)
      .def_readwrite("margin", &LossConfig::margin);

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_readwrite("batch", &TrainConfig::batch)
      .def_readwrite("lr", &TrainConfig::lr)
      .def_readwrite("loss", &TrainConfig::loss)
      .def_readwrite("model", &TrainConfig::model)
      .def_readwrite("audio_root", &TrainConfig::audio_root);

  py::class_<Checkpoint>(m, "Checkpoint")
      .def_readonly("val_history", &Checkpoint::val_history)
      .def("encode_text",
           [](const Checkpoint& c, const std::string& text) {
             const CueLexicon lex = CueLexicon::standard();
             return encode_text(c.params,
                                tokenize(text, lex, c.params.vocab,
                                         c.params.config.l_max));
           })
      .def("encode_audio", [](const Checkpoint& c, const AudioClip& clip) {
        return encode_audio(c.params,
                            features(clip, 0.5, c.params.config.bands));
      });

  m.def("save_checkpoint", &save_checkpoint, py::arg("checkpoint"),
        py::arg("path"));
  m.def("load_checkpoint", &load_checkpoint, py::arg("path"));

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("best", &TrainResult::best)
      .def_readonly("val_history", &TrainResult::val_history)
      .def_readonly("log_csv", &TrainResult::log_csv);

  m.def("train", &train, py::arg("manifest"), py::arg("bank"), py::arg("config"),
        py::arg("seed"));

  py::class_<EvalOptions>(m, "EvalOptions")
      .def(py::init<>())
      .def_readwrite("include_rev", &EvalOptions::include_rev)
      .def_readwrite("include_rep", &EvalOptions::include_rep)
      .def_readwrite("audio_root", &EvalOptions::audio_root)
      .def_readwrite("ks", &EvalOptions::ks);

  py::class_<EvalReport>(m, "EvalReport")
      .def("csv", [](const EvalReport& r) { return report_csv(r); })
      .def("table", [](const EvalReport& r) { return report_table(r); })
      .def(
          "recall",
          [](const EvalReport& r, const std::string& subset,
             const std::string& direction, int k) -> py::object {
            const auto* e = r.find(subset, direction, k);
            if (!e) return py::none();
            return py::float_(e->mean);
          },
          py::arg("subset"), py::arg("direction"), py::arg("k") = 1);

  m.def("evaluate", &evaluate, py::arg("checkpoints"), py::arg("manifest"),
        py::arg("bank"), py::arg("options") = EvalOptions{});
  m.def(
      "recall_at_k",
      [](const Mat& sim, const std::vector<std::set<std::size_t>>& relevance,
         int k) { return recall_at_k(sim, relevance, k); },
      py::arg("sim"), py::arg("relevance"), py::arg("k"));

  // ---- audit ----
  py::class_<GroundedItem>(m, "GroundedItem")
      .def(py::init<>())
      .def_readwrite("description", &GroundedItem::description)
      .def_readwrite("components", &GroundedItem::components);

  py::class_<AuditVerdict>(m, "AuditVerdict")
      .def_property_readonly(
          "label",
          [](const AuditVerdict& v) { return verdict_label_name(v.label); })
      .def_readonly("corrected_description",
                    &AuditVerdict::corrected_description)
      .def_readonly("raw_response", &AuditVerdict::raw_response);

  m.def("build_prompt", &build_prompt, py::arg("item"), py::arg("template"));
  m.def("format_component_time", &format_component_time, py::arg("t"));
  m.def("parse_verdict", &parse_verdict, py::arg("response"));
  m.def("mock_audit", &mock_audit, py::arg("item"));
  m.def(
      "audit_csv",
      [](const std::vector<GroundedItem>& items) {
        auto verdicts = audit_batch(items, {});
        return aggregate_csv(
            aggregate(verdicts, items, CueLexicon::standard()));
      },
      py::arg("items"));
  m.def("load_grounded", &load_grounded, py::arg("path"));
  m.def("parse_grounded", &parse_grounded, py::arg("jsonl"));
}
