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
#include <string>
#include <utility>
#include <vector>

#include "cenv/spec_io.hpp"

namespace cenv {

/// Standard examples.
SystemSpec full_matrix_spec(Eigen::Index d);
/// span{I, J, J^*, ..., J^k, J^{*k}} for the n x n nilpotent Jordan block.
SystemSpec jordan_spec(Eigen::Index n, int k);
/// J_n (+) lambda in M_{n+1}.
SystemSpec state_sum_spec(Eigen::Index n, cplx lambda, std::string name);
/// The standard state-sum example: e_01 + 0.5 e_22 in M_3.
SystemSpec state_sum_example();

struct CorpusEntry {
  SystemSpec spec;
  std::string file;
  std::string family;
  /// Seed the entry was drawn from; 0 for fixed members.
  std::uint64_t seed = 0;
};

/// The first `count` members of the seeded corpus sequence: fixed
/// structured members first, then seeded state sums and random systems.
/// Ambient dimensions stay at most 4.
std::vector<CorpusEntry> corpus_entries(std::uint64_t seed, int count);

/// Tensor pairs among the given entries (file names), in a fixed order.
std::vector<std::pair<std::string, std::string>> corpus_pairs(
    const std::vector<CorpusEntry>& entries);

}  // namespace cenv
