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

#include "temporet/syncaps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "temporet/transform.hpp"

namespace temporet {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_spec(const AugmentationSpec& s) {
  return fmt_double(s.time_shift_s) + "," + fmt_double(s.gain_db) + "," +
         fmt_double(s.pitch_semitones) + "," + fmt_double(s.stretch_factor) +
         "," + fmt_double(s.noise_snr_db);
}

AugmentationSpec parse_spec(const std::string& s) {
  AugmentationSpec spec;
  double* fields[5] = {&spec.time_shift_s, &spec.gain_db, &spec.pitch_semitones,
                       &spec.stretch_factor, &spec.noise_snr_db};
  std::size_t pos = 0;
  for (int i = 0; i < 5; ++i) {
    std::size_t comma = s.find(',', pos);
    std::string field =
        comma == std::string::npos ? s.substr(pos) : s.substr(pos, comma - pos);
    *fields[i] = std::strtod(field.c_str(), nullptr);
    pos = comma == std::string::npos ? s.size() : comma + 1;
  }
  return spec;
}

bool cue_is_future(Cue c) {
  return c == Cue::FollowedBy || c == Cue::Then || c == Cue::Before;
}

const std::string& meta_at(const ManifestRecord& r, const std::string& key) {
  auto it = r.meta.find(key);
  if (it == r.meta.end()) {
    throw SyncapsError("record '" + r.id + "': missing recipe field '" + key +
                       "'");
  }
  return it->second;
}

}  // namespace

std::string caption_for(const std::string& first_desc,
                        const std::string& second_desc, Cue cue) {
  const bool future = cue_is_future(cue);
  if (!future && cue != Cue::After && cue != Cue::PrecededBy) {
    throw SyncapsError("caption_for: joint cue " + cue_name(cue) +
                       " is not allowed");
  }
  const std::string& a = future ? first_desc : second_desc;
  const std::string& b = future ? second_desc : first_desc;
  return sentence_case(a + " " + cue_surface(cue) + " " + b);
}

DatasetManifest generate(const std::vector<SoundBankEntry>& bank,
                         const SyncapsSizes& sizes, double reuse_avg,
                         std::uint64_t seed, double target_s) {
  const auto n_labels = bank.size();
  if (n_labels < 2) throw SyncapsError("generate: need at least 2 bank labels");
  if (reuse_avg <= 0.0) throw SyncapsError("generate: reuse_avg must be > 0");
  const int sr = bank[0].clips.empty() ? 0 : bank[0].clips[0].sample_rate_hz;
  for (const auto& e : bank) {
    if (e.clips.empty()) {
      throw SyncapsError("generate: bank label '" + e.label + "' has no clips");
    }
    for (const auto& c : e.clips) {
      if (c.sample_rate_hz != sr) {
        throw SyncapsError("generate: mixed sample rates in bank");
      }
    }
  }

  // Clip pools. The last test_reserve clips of every label are exclusive
  // to the test split; train/val use a prefix sized so each clip is used
  // about reuse_avg times.
  const double test_slots = 2.0 * sizes.test;
  const double tv_slots = 2.0 * (sizes.train + sizes.val);
  const auto test_reserve = static_cast<std::size_t>(std::max(
      1.0, std::ceil(test_slots / (static_cast<double>(n_labels) * reuse_avg))));
  const auto tv_wanted = static_cast<std::size_t>(std::max(
      1.0, std::ceil(tv_slots / (static_cast<double>(n_labels) * reuse_avg))));
  std::vector<std::size_t> tv_pool(n_labels), test_lo(n_labels);
  for (std::size_t li = 0; li < n_labels; ++li) {
    const std::size_t n_clips = bank[li].clips.size();
    if (n_clips < test_reserve + 1) {
      throw SyncapsError(
          "generate: insufficient bank: label '" + bank[li].label + "' has " +
          std::to_string(n_clips) + " clips, needs at least " +
          std::to_string(test_reserve + 1) + " (" +
          std::to_string(test_reserve) + " reserved for test + 1 for train/val)");
    }
    test_lo[li] = n_clips - test_reserve;
    tv_pool[li] = std::min(tv_wanted, test_lo[li]);
  }

  Rng rng(seed);
  const auto n_target = static_cast<std::size_t>(std::llround(target_s * sr));

  DatasetManifest manifest;
  long global_idx = 0;
  const std::array<std::pair<const char*, int>, 3> split_plan = {{
      {"train", sizes.train},
      {"val", sizes.val},
      {"test", sizes.test},
  }};
  for (const auto& [split, count] : split_plan) {
    const bool is_test = std::string(split) == "test";
    for (int i = 0; i < count; ++i, ++global_idx) {
      const Cue cue = kDirectionalCues[global_idx % 5];
      const auto la = static_cast<std::size_t>(rng.below(n_labels));
      auto lb = static_cast<std::size_t>(rng.below(n_labels - 1));
      if (lb >= la) ++lb;
      const std::size_t ca =
          is_test ? test_lo[la] + rng.below(bank[la].clips.size() - test_lo[la])
                  : rng.below(tv_pool[la]);
      const std::size_t cb =
          is_test ? test_lo[lb] + rng.below(bank[lb].clips.size() - test_lo[lb])
                  : rng.below(tv_pool[lb]);
      AugmentationSpec spec1 = AugmentationSpec::random(rng);
      AugmentationSpec spec2 = AugmentationSpec::random(rng);
      const std::uint64_t nseed1 = rng.next_u64();
      const std::uint64_t nseed2 = rng.next_u64();
      const std::size_t len1 =
          augmented_length(bank[la].clips[ca].samples.size(), spec1);
      const std::size_t len2 =
          augmented_length(bank[lb].clips[cb].samples.size(), spec2);

      double overlap_s = rng.uniform();  // up to one second
      auto n_ov = static_cast<std::size_t>(std::llround(overlap_s * sr));
      if (len1 + len2 > n_target + n_ov) {
        n_ov = len1 + len2 - n_target;  // smallest overlap that still fits
      }
      if (n_ov > static_cast<std::size_t>(sr) || n_ov > len1) {
        throw SyncapsError("generate: clips too long for target duration");
      }
      overlap_s = static_cast<double>(n_ov) / sr;

      ManifestRecord r;
      char id[48];
      std::snprintf(id, sizeof(id), "syn_%s_%05d", split, i);
      r.id = id;
      r.split = split;
      r.captions.push_back(
          caption_for(bank[la].description, bank[lb].description, cue));
      const double on2 = static_cast<double>(len1 - n_ov) / sr;
      r.events.push_back({bank[la].label, 0.0, static_cast<double>(len1) / sr});
      r.events.push_back({bank[lb].label, on2, on2 + static_cast<double>(len2) / sr});
      r.meta["gen"] = "syncaps";
      r.meta["cue"] = cue_name(cue);
      r.meta["first_label"] = bank[la].label;
      r.meta["first_clip"] = std::to_string(ca);
      r.meta["second_label"] = bank[lb].label;
      r.meta["second_clip"] = std::to_string(cb);
      r.meta["aug1"] = fmt_spec(spec1);
      r.meta["aug2"] = fmt_spec(spec2);
      r.meta["noise_seed1"] = std::to_string(nseed1);
      r.meta["noise_seed2"] = std::to_string(nseed2);
      r.meta["overlap_s"] = fmt_double(overlap_s);
      r.meta["target_s"] = fmt_double(target_s);
      r.meta["sample_rate"] = std::to_string(sr);
      manifest.records.push_back(std::move(r));
    }
  }
  return manifest;
}

AudioClip materialize_record(const ManifestRecord& record,
                             const std::vector<SoundBankEntry>& bank) {
  std::map<std::string, const SoundBankEntry*> by_label;
  for (const auto& e : bank) by_label[e.label] = &e;

  auto fetch = [&](const std::string& label_key, const std::string& clip_key) {
    const std::string& label = meta_at(record, label_key);
    auto it = by_label.find(label);
    if (it == by_label.end()) {
      throw SyncapsError("record '" + record.id + "': bank has no label '" +
                         label + "'");
    }
    const auto idx = static_cast<std::size_t>(
        std::stoul(meta_at(record, clip_key)));
    if (idx >= it->second->clips.size()) {
      throw SyncapsError("record '" + record.id + "': clip index out of range");
    }
    return &it->second->clips[idx];
  };

  const AudioClip* clip1 = fetch("first_label", "first_clip");
  const AudioClip* clip2 = fetch("second_label", "second_clip");
  AudioClip aug1 = augment(*clip1, parse_spec(meta_at(record, "aug1")),
                           std::stoull(meta_at(record, "noise_seed1")));
  AudioClip aug2 = augment(*clip2, parse_spec(meta_at(record, "aug2")),
                           std::stoull(meta_at(record, "noise_seed2")));
  const double overlap_s = std::strtod(meta_at(record, "overlap_s").c_str(), nullptr);
  const double target_s = std::strtod(meta_at(record, "target_s").c_str(), nullptr);
  auto [composite, events] = compose_pair(aug1, aug2, overlap_s, target_s);
  composite.id = record.id;
  return composite;
}

}  // namespace temporet
