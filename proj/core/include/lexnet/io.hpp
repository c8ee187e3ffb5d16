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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lexnet::io {

bool is_valid_utf8(std::string_view bytes);

// Reads a text file line by line. Strips a trailing '\r', a leading UTF-8
// BOM, and rejects undecodable bytes with a file:line ParseError.
std::vector<std::string> read_utf8_lines(const std::filesystem::path& path);

// Reads newline-separated terms, skipping blank lines and comment lines
// ("#" alone or "# " followed by text; hashtags such as "#fb" are terms).
std::vector<std::string> read_term_list(const std::filesystem::path& path);

// RFC 4180 field quoting: quotes only when the field contains a comma,
// a double quote, or a line break.
std::string csv_escape(std::string_view field);

// Splits one CSV record. Throws InvalidArgument on an unterminated quote.
std::vector<std::string> csv_split(std::string_view line);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest round-trip representation; "nan"/"inf" for non-finite values.
std::string format_double(double value);

// Opens `path` for writing, creating parent directories.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace lexnet::io
