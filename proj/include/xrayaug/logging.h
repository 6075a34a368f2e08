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

#ifndef XRAYAUG_LOGGING_H_
#define XRAYAUG_LOGGING_H_

#include <memory>

#include <spdlog/spdlog.h>

namespace xrayaug {

// Shared stderr logger. Messages are "event key=value ..." lines.
spdlog::logger& log();

}  // namespace xrayaug

#endif  // XRAYAUG_LOGGING_H_
