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

#include "xrayaug/canonical_json.h"

#include <cmath>
#include <cstdio>
#include <map>

#include "xrayaug/codec.h"
#include "xrayaug/errors.h"

namespace xrayaug {

namespace {

void indent(std::string& out, int depth) { out.append(size_t(depth) * 2, ' '); }

void emit_float(std::string& out, double v) {
  if (!std::isfinite(v)) throw ParameterError("canonical json: non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  out += s;
}

void emit(std::string& out, const Json& v, int depth) {
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      // nlohmann::json's default object is std::map, already key-sorted;
      // copy into a map anyway so ordered_json inputs are canonical too.
      std::map<std::string, const Json*> sorted;
      for (auto it = v.begin(); it != v.end(); ++it) sorted[it.key()] = &it.value();
      out += "{\n";
      size_t n = 0;
      for (const auto& [key, value] : sorted) {
        indent(out, depth + 1);
        out += Json(key).dump();
        out += ": ";
        emit(out, *value, depth + 1);
        out += ++n < sorted.size() ? ",\n" : "\n";
      }
      indent(out, depth);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < v.size(); ++i) {
        indent(out, depth + 1);
        emit(out, v[i], depth + 1);
        out += i + 1 < v.size() ? ",\n" : "\n";
      }
      indent(out, depth);
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      emit_float(out, v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string canonical_json(const Json& value) {
  std::string out;
  emit(out, value, 0);
  out += "\n";
  return out;
}

Json parse_json(const std::string& text, const std::string& source_name) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source_name + ": malformed JSON at byte " +
                     std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_json(std::string(bytes.begin(), bytes.end()), path.string());
}

}  // namespace xrayaug
