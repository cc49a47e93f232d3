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
#include <functional>
#include <optional>
#include <vector>

#include "cenv/linalg.hpp"

namespace cenv {

/// A linear map given by its values on an orthonormal basis of its domain.
struct LinearMap {
  MatSubspace domain;
  std::vector<Mat> images;
  Eigen::Index target_dim = 0;

  /// Evaluates on the orthogonal projection of `a` onto the domain.
  Mat operator()(const Mat& a) const;
};

LinearMap make_linear_map(const MatSubspace& domain,
                          const std::function<Mat(const Mat&)>& f,
                          Eigen::Index target_dim);

/// phi (x) psi on the Kronecker basis of the tensored domains.
LinearMap tensor_map(const LinearMap& phi, const LinearMap& psi);

struct Counterexample {
  int level = 0;
  int trial = 0;
  /// The amplified element, normalised to operator norm 1.
  Mat x;
  double image_norm = 0.0;
  /// 1 - ||phi^(m)(x)||.
  double gap = 0.0;
};

/// Randomised search for x in M_m(domain), m <= level_cap, with
/// ||phi^(m)(x)|| < ||x|| - tol.norm. Trial t works at level
/// 1 + (t mod level_cap) from a seeded random start and runs gradient
/// ascent of log ||x|| - log ||phi^(m)(x)||. Returns the first violation
/// found, after further ascent to enlarge its gap. level_cap <= 0 means the
/// target dimension.
std::optional<Counterexample> falsify_complete_isometry(
    const LinearMap& phi, int trials, std::uint64_t seed,
    const Tolerances& tol = {}, int level_cap = 0);

}  // namespace cenv
