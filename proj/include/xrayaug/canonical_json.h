// Copyright 2026 The xrayaug Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XRAYAUG_CANONICAL_JSON_H_
#define XRAYAUG_CANONICAL_JSON_H_

#include <filesystem>
#include <string>

#include "json.hpp"

namespace xrayaug {

using Json = nlohmann::json;

// Byte-deterministic JSON: keys sorted, two-space indentation, integers
// verbatim, every floating-point value printed with exactly six decimals,
// trailing newline. Throws ParameterError on NaN or infinity.
std::string canonical_json(const Json& value);

// Parses a JSON document; ParseError carries the byte offset on failure.
Json parse_json(const std::string& text, const std::string& source_name);
Json read_json_file(const std::filesystem::path& path);

}  // namespace xrayaug

#endif  // XRAYAUG_CANONICAL_JSON_H_
