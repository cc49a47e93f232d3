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
#include <vector>

#include "cenv/boundary.hpp"
#include "cenv/propagation.hpp"
#include "cenv/tensor.hpp"

namespace cenv {

struct PipelineOptions {
  BoundaryOptions boundary;
  int falsifier_trials = 1000;
  Eigen::Index max_ambient_product = 36;
  /// Worker threads for per-block work inside one analysis.
  int jobs = 1;

  TensorOptions tensor() const;
};

/// Everything computed for one operator system.
struct SystemAnalysis {
  OperatorSystem system;
  WedderburnData wedderburn;
  SilovResult dk;
  SilovResult lattice;
  bool routes_agree = false;
  /// Set when the routes agree.
  std::optional<Envelope> envelope;
  std::optional<PropResult> propagation;
  /// Powers of E inside C*(E); differs from the propagation chain when
  /// the Silov ideal is nonzero.
  std::vector<Eigen::Index> ambient_chain;
  /// Falsifier on the quotient by the Silov ideal, restricted to E.
  std::optional<Counterexample> silov_counterexample;
  bool pass = false;
  std::string failure;
};

SystemAnalysis analyze_system(const OperatorSystem& e, const PipelineOptions& opt);

/// The product checks for a pair of analysed systems.
struct TensorAnalysis {
  MainTheoremReport main;
  HopenwasserReport hopenwasser;
  PowerTensorReport power_tensor;
  /// Only run when the main theorem check passes.
  std::optional<PropMaxReport> prop_max;
  WedderburnData product_blocks;
  bool pass = false;
  std::string failure;
};

/// Throws VerificationError when either factor failed its own analysis and
/// InputError above the product ambient cap.
TensorAnalysis analyze_tensor(const SystemAnalysis& e, const SystemAnalysis& f,
                              const PipelineOptions& opt);

}  // namespace cenv
