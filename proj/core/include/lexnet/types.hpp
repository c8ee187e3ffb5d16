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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexnet/timeutil.hpp"

namespace lexnet {

enum class Gender { female, male, unknown };

std::string_view to_string(Gender g);
// Accepts "female"/"male"/"unknown" and the single letters F/M/U.
std::optional<Gender> parse_gender(std::string_view text);

// Binary label used by the classifier: female = +1, male = -1.
inline int gender_label(Gender g) { return g == Gender::female ? 1 : -1; }

inline Gender opposite(Gender g) {
  switch (g) {
    case Gender::female: return Gender::male;
    case Gender::male: return Gender::female;
    default: return Gender::unknown;
  }
}

// ASCII lowercase; author ids and mention targets share this canonical form.
std::string ascii_lower(std::string_view s);

struct RawMessage {
  std::string author_id;    // canonical (lowercase)
  std::string author_name;  // profile name field
  Timestamp timestamp = 0;
  std::string text;
  std::vector<std::string> mentions;  // canonical ids, in text order
};

}  // namespace lexnet
