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

#include "lexnet/data.hpp"

#include <cstdlib>

namespace lexnet {

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("LEXNET_DATA_DIR"); env && *env) return env;
  const std::filesystem::path source = LEXNET_SOURCE_DATA_DIR;
  std::error_code ec;
  if (std::filesystem::is_directory(source / "lexicon", ec)) return source;
  return LEXNET_INSTALL_DATA_DIR;
}

}  // namespace lexnet
