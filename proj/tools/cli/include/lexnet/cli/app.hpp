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

#include <iosfwd>
#include <string>
#include <vector>

#include "lexnet/cli/config.hpp"
#include "lexnet/cli/manifest.hpp"

namespace lexnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// ingest, classify, markers, categorize, cluster, network, homophily, curve,
// synth, all.
const std::vector<std::string>& command_names();

// Runs one command with a resolved and validated config, writing artifacts
// and manifest.json into cfg.paths.output_dir. Progress lines go to `log`.
Manifest run_command(const std::string& command, const RunConfig& cfg, std::ostream& log);

// Command-line entry point; `args` excludes the program name. Returns 0 on
// success, 1 on invalid config or a failed run, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexnet::cli
