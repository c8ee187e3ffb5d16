// Copyright 2026 The lexnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lexnet/classifier.hpp"
#include "lexnet/clustering.hpp"
#include "lexnet/corpus.hpp"
#include "lexnet/error.hpp"
#include "lexnet/markers.hpp"
#include "lexnet/stats.hpp"
#include "lexnet/synth.hpp"

namespace lexnet::cli {

// Invalid configuration value; `field` is the dotted key, e.g. "markers.alpha".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct PathsConfig {
  std::filesystem::path messages;
  std::filesystem::path names;
  std::filesystem::path lexicon_dir;  // empty: shipped lexica
  std::filesystem::path dictionary;   // empty: <lexicon_dir>/dictionary.txt
  std::filesystem::path output_dir = "lexnet-out";
};

struct HomophilyConfig {
  std::size_t bins = 10;
  stats::BinMode bin_mode = stats::BinMode::equal_count;
  double significance = 0.05;  // binomial skew test
  double level = 0.99;         // Fisher interval
};

struct RunConfig {
  PathsConfig paths;
  std::uint64_t seed = 0;

  CorpusFilterConfig corpus;
  bool filter = true;
  std::int64_t min_separation_days = 14;

  std::size_t vocab_size = 10000;

  TrainConfig classifier;
  std::size_t folds = 10;

  MarkerConfig markers;

  EMConfig clustering;
  bool cluster_balance = true;
  CompositionConfig composition;

  HomophilyConfig homophily;

  std::vector<std::size_t> budgets{0, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000, 2000, 5000};

  SynthConfig synth;
  std::filesystem::path synth_output;  // empty: <output_dir>/synth

  // Copies the master seed into every stage config.
  void propagate_seed();
  // Throws ConfigError naming the first offending field.
  void validate() const;
};

// Dotted keys accepted in config files and --set overrides.
std::vector<std::string> config_keys();

// Sets one key from its textual value. Throws ConfigError for unknown keys
// or unparsable values.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

// INI file with [section] headers and key = value lines. Relative paths are
// resolved against the file's directory.
RunConfig load_config(const std::filesystem::path& path);

// "key = value" per line in key order; the basis of the config hash.
std::string canonical_dump(const RunConfig& cfg);

}  // namespace lexnet::cli
