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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace lexnet::cli {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// Run record written next to the artifacts. Holds no timestamps, so
// identical runs produce identical manifests.
struct Manifest {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> inputs;     // path -> digest
  std::map<std::string, std::string> artifacts;  // file name relative to output dir -> digest

  void add_input(const std::filesystem::path& path);
  void add_artifact(const std::filesystem::path& output_dir, const std::filesystem::path& file);

  std::string to_json_string() const;
  void write(const std::filesystem::path& path) const;
  static Manifest read(const std::filesystem::path& path);
};

}  // namespace lexnet::cli
