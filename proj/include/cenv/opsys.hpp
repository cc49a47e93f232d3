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

#include "cenv/linalg.hpp"

namespace cenv {

/// A unital, adjoint-closed subspace of M_n.
struct OperatorSystem {
  Eigen::Index ambient = 0;
  MatSubspace space;
  std::string label;
};

/// A *-subalgebra of M_n together with a self-adjoint generating set. The
/// generators are used for commutant computations, which is much cheaper
/// than commuting with a full basis.
struct CStarAlgebra {
  Eigen::Index ambient = 0;
  MatSubspace space;
  bool unital = false;
  std::vector<Mat> generators;
};

/// span({I_n} + gens + gens^*). Throws InputError on shape mismatch.
OperatorSystem opsys_from_generators(Eigen::Index n, std::span<const Mat> gens,
                                     const Tolerances& tol = {},
                                     std::string label = {});

/// span(P . Q) for the bases of P and Q, products taken in row-major pair
/// order.
MatSubspace product_span(const MatSubspace& p, const MatSubspace& q,
                         const Tolerances& tol = {});

/// E^{o k}, computed as span(E^{o (k-1)} . E).
MatSubspace power_span(const MatSubspace& e, int k, const Tolerances& tol = {});
MatSubspace power_span(const OperatorSystem& e, int k,
                       const Tolerances& tol = {});

/// Dimensions of E^{o 1}, E^{o 2}, ... up to and including the first k with
/// dim E^{o k} = dim E^{o (k+1)}; `last` receives that stable power.
std::vector<Eigen::Index> power_chain(const MatSubspace& e,
                                      MatSubspace* last = nullptr,
                                      const Tolerances& tol = {});

/// The C*-algebra generated by E, realised as the stable power of E.
CStarAlgebra generated_cstar(const OperatorSystem& e,
                             const Tolerances& tol = {});

/// Invariant checks; each returns an empty string on success and a short
/// description of the first violation otherwise.
std::string check_operator_system(const OperatorSystem& e,
                                  const Tolerances& tol = {});
std::string check_cstar_algebra(const CStarAlgebra& a,
                                const Tolerances& tol = {});

}  // namespace cenv
