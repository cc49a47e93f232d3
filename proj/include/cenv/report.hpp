// Copyright 2026 The cenv Authors
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

#include <json.hpp>

#include "cenv/pipeline.hpp"

namespace cenv {

inline constexpr const char* kVersion = "cenv 1.0.0";

/// What a report echoes besides the results.
struct ReportContext {
  PipelineOptions options;
  /// Wall-clock seconds; reports carry null unless set.
  std::optional<double> seconds;
};

struct InputRef {
  std::string name;
  std::string digest;
};

/// Block indices in reports are 1-based; product blocks are [i, j] pairs.
nlohmann::ordered_json analysis_report(const SystemAnalysis& a,
                                       const InputRef& input,
                                       const ReportContext& ctx);

nlohmann::ordered_json tensor_report(const SystemAnalysis& e, const InputRef& ie,
                                     const SystemAnalysis& f, const InputRef& iff,
                                     const TensorAnalysis& t,
                                     const ReportContext& ctx);

/// Report for a run that stopped with an error: exit code and message.
nlohmann::ordered_json error_report(const std::string& kind,
                                    const std::vector<InputRef>& inputs,
                                    int exit_code, const std::string& message,
                                    const ReportContext& ctx);

/// Two-space indented dump with a trailing newline.
std::string dump_report(const nlohmann::ordered_json& j);

}  // namespace cenv
