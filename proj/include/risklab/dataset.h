// Copyright 2026 The Risklab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISKLAB_DATASET_H_
#define RISKLAB_DATASET_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "risklab/bags.h"

namespace risklab {

// One exported event: the app-visible features plus the visibility flag.
struct EventRecord {
  double duration_min = 0;
  double attenuation_db = 0;
  Level level = Level::kNone;
  bool visible = true;
};

// One exported bag. Dataset line format, one line per bag:
//   <user_id> <label> <dur>,<att>,<level>,<visible> ...
// Floats use shortest round-trip decimals so files are bit-reproducible.
struct BagRecord {
  std::uint64_t user_id = 0;
  bool label = false;
  std::vector<EventRecord> events;
};

// Sidecar metadata written next to a dataset. Records what is needed to
// re-evaluate the dataset: the generating seed and config hash, pool counts,
// and the train/test membership by user id.
struct DatasetManifest {
  std::string config_hash;
  std::uint64_t seed = 0;
  long n_pool_events = 0;
  long n_pool_positives = 0;
  long n_bags = 0;
  std::vector<std::uint64_t> train_user_ids;
  std::vector<std::uint64_t> test_user_ids;
};

BagRecord make_record(const Bag& bag, const SimParams& params,
                      const ContagiousnessLut& lut,
                      std::size_t* clamp_count = nullptr);

// Visible events only.
ObservedBag to_observed(const BagRecord& record);

std::string format_bag_record(const BagRecord& record);
// Throws ConfigError with the (1-based) line number on malformed input.
BagRecord parse_bag_record(const std::string& line, long line_number);

void write_dataset(std::span<const BagRecord> records, const std::string& path);
std::vector<BagRecord> read_dataset(const std::string& path);

void write_manifest(const DatasetManifest& manifest, const std::string& path);
DatasetManifest read_manifest(const std::string& path);

// Path of the manifest that belongs to a dataset file.
std::string manifest_path_for(const std::string& dataset_path);

// FNV-1a 64-bit hex digest; used to stamp configs into manifests.
std::string fnv1a_hex(const std::string& text);

}  // namespace risklab

#endif  // RISKLAB_DATASET_H_
