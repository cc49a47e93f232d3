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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "cenv/pipeline.hpp"

namespace cenv {

/// Exit codes.
enum ExitCode : int { kOk = 0, kInput = 1, kFailure = 2, kInconclusive = 3 };

struct CommandOptions {
  PipelineOptions pipeline;
  /// Report destination; "-" is stdout.
  std::optional<std::filesystem::path> json_out;
  bool quiet = false;
  /// Record wall-clock time in reports. Off by default so that reports are
  /// reproducible byte for byte.
  bool timing = false;
  /// File-level workers for verify-all; block-level workers otherwise.
  int jobs = 1;
  /// verify-all report directory; defaults to <corpus>/reports.
  std::optional<std::filesystem::path> out_dir;
};

/// Runs `body`, mapping InputError to 1, VerificationError to 2 and
/// InconclusiveError to 3. Other exceptions count as failures. `message`
/// receives the error text.
int run_guarded(const std::function<int()>& body, std::string& message);

int cmd_analyze(const std::filesystem::path& path, const CommandOptions& opt,
                std::ostream& out, std::ostream& err);
int cmd_tensor(const std::filesystem::path& left, const std::filesystem::path& right,
               const CommandOptions& opt, std::ostream& out, std::ostream& err);
/// Writes `count` spec files and manifest.json into `out_dir`.
int cmd_corpus(const std::filesystem::path& out_dir, std::uint64_t seed, int count,
               const CommandOptions& opt, std::ostream& out, std::ostream& err);
/// Analyses every manifest entry and every listed pair, writes one report
/// per item plus summary.json, and prints a summary table.
int cmd_verify_all(const std::filesystem::path& corpus_dir,
                   const CommandOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace cenv
