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

#include "risklab/dataset.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "risklab/errors.h"
#include "risklab/text_format.h"

namespace risklab {

namespace {

std::vector<std::string_view> split_on(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

[[noreturn]] void bad_line(long line_number, const std::string& detail) {
  throw ConfigError("dataset line " + std::to_string(line_number) + ": " +
                    detail);
}

}  // namespace

BagRecord make_record(const Bag& bag, const SimParams& params,
                      const ContagiousnessLut& lut, std::size_t* clamp_count) {
  BagRecord record;
  record.user_id = bag.user_id;
  record.label = bag.label;
  record.events.reserve(bag.events.size());
  for (std::size_t n = 0; n < bag.events.size(); ++n) {
    const ObservedExposure obs =
        observe_event(bag.events[n], params, lut, clamp_count);
    record.events.push_back(EventRecord{
        .duration_min = obs.duration_min,
        .attenuation_db = obs.attenuation_db,
        .level = obs.level,
        .visible = bag.visible[n] != 0,
    });
  }
  return record;
}

ObservedBag to_observed(const BagRecord& record) {
  ObservedBag bag;
  bag.user_id = record.user_id;
  bag.label = record.label;
  for (const EventRecord& event : record.events) {
    if (event.visible) {
      bag.exposures.push_back(ObservedExposure{
          .duration_min = event.duration_min,
          .attenuation_db = event.attenuation_db,
          .level = event.level,
      });
    }
  }
  return bag;
}

std::string format_bag_record(const BagRecord& record) {
  std::string line = std::to_string(record.user_id);
  line += ' ';
  line += record.label ? '1' : '0';
  for (const EventRecord& event : record.events) {
    line += ' ';
    line += format_double(event.duration_min);
    line += ',';
    line += format_double(event.attenuation_db);
    line += ',';
    line += std::to_string(static_cast<int>(event.level));
    line += ',';
    line += event.visible ? '1' : '0';
  }
  return line;
}

BagRecord parse_bag_record(const std::string& line, long line_number) {
  const std::vector<std::string_view> fields = split_on(line, ' ');
  if (fields.size() < 2) bad_line(line_number, "expected user_id and label");

  BagRecord record;
  if (!parse_u64(fields[0], &record.user_id)) {
    bad_line(line_number, "bad user_id '" + std::string(fields[0]) + "'");
  }
  if (fields[1] == "0") {
    record.label = false;
  } else if (fields[1] == "1") {
    record.label = true;
  } else {
    bad_line(line_number, "bad label '" + std::string(fields[1]) + "'");
  }

  for (std::size_t i = 2; i < fields.size(); ++i) {
    const std::vector<std::string_view> parts = split_on(fields[i], ',');
    if (parts.size() != 4) {
      bad_line(line_number, "event tuple needs 4 fields, got '" +
                                std::string(fields[i]) + "'");
    }
    EventRecord event;
    if (!parse_double(parts[0], &event.duration_min) ||
        !(event.duration_min >= 0)) {
      bad_line(line_number, "bad duration '" + std::string(parts[0]) + "'");
    }
    if (!parse_double(parts[1], &event.attenuation_db)) {
      bad_line(line_number, "bad attenuation '" + std::string(parts[1]) + "'");
    }
    int level = 0;
    if (!parse_int(parts[2], &level) || level < 1 || level > 3) {
      bad_line(line_number, "bad level '" + std::string(parts[2]) + "'");
    }
    event.level = static_cast<Level>(level);
    if (parts[3] == "0") {
      event.visible = false;
    } else if (parts[3] == "1") {
      event.visible = true;
    } else {
      bad_line(line_number, "bad visible flag '" + std::string(parts[3]) + "'");
    }
    record.events.push_back(event);
  }
  return record;
}

void write_dataset(std::span<const BagRecord> records,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const BagRecord& record : records) {
    out << format_bag_record(record) << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

std::vector<BagRecord> read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::vector<BagRecord> records;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    records.push_back(parse_bag_record(line, line_number));
  }
  return records;
}

void write_manifest(const DatasetManifest& manifest, const std::string& path) {
  nlohmann::json doc;
  doc["config_hash"] = manifest.config_hash;
  doc["seed"] = manifest.seed;
  doc["n_pool_events"] = manifest.n_pool_events;
  doc["n_pool_positives"] = manifest.n_pool_positives;
  doc["n_bags"] = manifest.n_bags;
  doc["train_user_ids"] = manifest.train_user_ids;
  doc["test_user_ids"] = manifest.test_user_ids;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

DatasetManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  nlohmann::json doc;
  try {
    in >> doc;
    DatasetManifest manifest;
    doc.at("config_hash").get_to(manifest.config_hash);
    doc.at("seed").get_to(manifest.seed);
    doc.at("n_pool_events").get_to(manifest.n_pool_events);
    doc.at("n_pool_positives").get_to(manifest.n_pool_positives);
    doc.at("n_bags").get_to(manifest.n_bags);
    doc.at("train_user_ids").get_to(manifest.train_user_ids);
    doc.at("test_user_ids").get_to(manifest.test_user_ids);
    return manifest;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest " + path + ": " + e.what());
  }
}

std::string manifest_path_for(const std::string& dataset_path) {
  return dataset_path + ".manifest.json";
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

}  // namespace risklab
