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

#ifndef XRAYAUG_ERRORS_H_
#define XRAYAUG_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xrayaug {

// Base of every error the library raises. The CLI maps the concrete type to
// an exit code, so new subclasses must be added to cli.cc as well.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument violates an operation's precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class CodecError : public Error {
 public:
  using Error::Error;
};

// Invalid declarative configuration (pipeline config file, mixer on a
// single-sample dataset, unresolved class name, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data failed validation. Carries every offender, not just the first.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> offenders)
      : Error(Format(what, offenders)), offenders_(std::move(offenders)) {}
  explicit ValidationError(const std::string& what) : Error(what) {}

  const std::vector<std::string>& offenders() const { return offenders_; }

 private:
  static std::string Format(const std::string& what,
                            const std::vector<std::string>& offenders) {
    std::string out = what;
    for (const auto& o : offenders) out += "\n  - " + o;
    return out;
  }

  std::vector<std::string> offenders_;
};

// A mixer found no eligible object/partner. Not a failure: the pipeline
// passes the sample through unchanged.
class MixerIneligible : public Error {
 public:
  using Error::Error;
};

}  // namespace xrayaug

#endif  // XRAYAUG_ERRORS_H_
