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
#include <string>
#include <vector>

#include "cenv/opsys.hpp"

namespace cenv {

inline constexpr const char* kSchemaVersion = "v1";

/// Input document: E = span{I, g, g^*} over the generators, in M_n.
struct SystemSpec {
  std::string name;
  Eigen::Index ambient_dim = 0;
  std::vector<Mat> generators;
};

/// Parses a SystemSpec document. Throws InputError with a line number for
/// syntax errors and a field path for schema errors; `source` prefixes the
/// message.
SystemSpec parse_system_spec(const std::string& text,
                             const std::string& source = "<input>");
SystemSpec read_system_spec(const std::filesystem::path& path);

/// Canonical serialisation, newline-terminated.
std::string dump_system_spec(const SystemSpec& spec);

OperatorSystem to_operator_system(const SystemSpec& spec,
                                  const Tolerances& tol = {});

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

}  // namespace cenv
