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

#include <string>
#include <vector>

#include "cenv/boundary.hpp"

namespace cenv {

struct PropResult {
  int value = 0;
  /// dim of the k-th power of the embedded image, k = 1..value.
  std::vector<Eigen::Index> chain;
  Eigen::Index envelope_dim = 0;
  /// Dimensions at value + 1 and value + 2.
  std::vector<Eigen::Index> tail;
};

/// Powers of the image of E inside its envelope. Throws VerificationError
/// if the chain stabilises below the envelope dimension.
PropResult propagation_number(const Envelope& env, const Tolerances& tol = {});
PropResult propagation_number(const OperatorSystem& e, const BoundaryOptions& opt);

/// The same chain for E inside C*(E). Not the propagation number when the
/// Silov ideal is nonzero.
std::vector<Eigen::Index> ambient_chain(const OperatorSystem& e,
                                        const Tolerances& tol = {});

struct PowerTensorReport {
  bool pass = false;
  int n_max = 0;
  /// Per n: dim of E^n (x) F^n and of (E (x) F)^n.
  std::vector<Eigen::Index> tensor_of_powers;
  std::vector<Eigen::Index> power_of_tensor;
  /// First failing n (0 if none) and the largest distance of a basis
  /// element of either side from the other side.
  int failed_n = 0;
  double defect = 0.0;
};

/// E^n (x) F^n = (E (x) F)^n for n = 1..n_max in the product ambient.
PowerTensorReport verify_power_tensor(const OperatorSystem& e,
                                      const OperatorSystem& f, int n_max,
                                      const Tolerances& tol = {});

struct PropMaxReport {
  bool pass = false;
  PropResult left;
  PropResult right;
  PropResult product;
};

/// prop(E (x) F) = max(prop E, prop F) from the three envelopes.
PropMaxReport verify_prop_max(const Envelope& e, const Envelope& f,
                              const Envelope& product,
                              const Tolerances& tol = {});

}  // namespace cenv
