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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cenv/boundary.hpp"
#include "cenv/falsifier.hpp"
#include "cenv/wedderburn.hpp"

namespace cenv {

struct TensorSystem {
  OperatorSystem left;
  OperatorSystem right;
  /// span{kron(e, f)} in M_{n m}.
  OperatorSystem product;
};

TensorSystem min_tensor(const OperatorSystem& e, const OperatorSystem& f,
                        const Tolerances& tol = {});

/// A (x) B with generators kron(g, I) and kron(I, h).
CStarAlgebra min_tensor(const CStarAlgebra& a, const CStarAlgebra& b,
                        const Tolerances& tol = {});

/// Index of the product block for the pair (i, j); pairs are ordered
/// lexicographically.
inline int pair_index(int i, int j, int right_blocks) {
  return i * right_blocks + j;
}
inline std::pair<int, int> pair_of(int k, int right_blocks) {
  return {k / right_blocks, k % right_blocks};
}

/// Block structure of A (x) B read off the factors: block (i, j) has size
/// d_i d'_j, multiplicity m_i m'_j and copies kron(B_{i,k}, B'_{j,l}).
/// Labels are {i, j}.
WedderburnData product_blocks(const WedderburnData& wa,
                              const WedderburnData& wb,
                              const Tolerances& tol = {});

/// Compares a product decomposition with an independent one of the same
/// algebra: equal algebras, equal block multisets and a bijection of blocks
/// by irreducible intertwiners. Empty string on success.
std::string compare_decompositions(const WedderburnData& product,
                                   const WedderburnData& direct,
                                   const Tolerances& tol = {});

/// Killed pairs of ker(q_I (x) q_J): every (i, j) with i in I or j in J.
BlockSet kernel_of_tensor_quotients(const BlockSet& i, int left_blocks,
                                    const BlockSet& j, int right_blocks);

/// Null space of q_I (x) q_J on A (x) B, computed from the maps.
MatSubspace tensor_quotient_kernel(const WedderburnData& wa, const BlockSet& i,
                                   const WedderburnData& wb, const BlockSet& j,
                                   const Tolerances& tol = {});

/// Options for the product verifications.
struct TensorOptions {
  BoundaryOptions boundary;
  int falsifier_trials = 1000;
  Eigen::Index max_ambient_product = 36;
};

/// Everything computed for one factor.
struct FactorAnalysis {
  OperatorSystem system;
  WedderburnData wedderburn;
  SilovResult dk;
  SilovResult lattice;
};

FactorAnalysis analyze_factor(const OperatorSystem& e, const TensorOptions& opt,
                              int jobs = 1);

struct MainTheoremReport {
  bool pass = false;
  BlockSet silov_left;
  BlockSet silov_right;
  /// Product decomposition agrees with the direct one.
  bool product_blocks_ok = false;
  std::string product_blocks_detail;
  SilovResult product_dk;
  SilovResult product_lattice;
  bool routes_agree = false;
  /// ker q_I (x) q_J as pairs, and its subspace cross-check.
  BlockSet kernel;
  bool kernel_subspace_ok = false;
  /// Silov(E (x) F) contained in the kernel at subspace level.
  bool inclusion_ok = false;
  /// No counterexample to q_kernel being completely isometric.
  bool boundary_ideal_ok = false;
  std::optional<Counterexample> counterexample;
  bool killed_equal = false;
  /// Sorted envelope block sizes: computed, and from the factor envelopes.
  std::vector<Eigen::Index> envelope_dims;
  std::vector<Eigen::Index> expected_envelope_dims;
  bool envelope_ok = false;
  std::string failure;
};

/// Silov ideal and envelope of E (x) F against the factors. `product` receives the product decomposition
/// and the tensor system when given. Throws InputError above the ambient
/// cap.
MainTheoremReport verify_main_theorem(const FactorAnalysis& e,
                                      const FactorAnalysis& f,
                                      const TensorOptions& opt,
                                      TensorSystem* system = nullptr,
                                      WedderburnData* product = nullptr,
                                      int jobs = 1);

struct HopenwasserReport {
  bool pass = false;
  /// (pair, unique) for every pair of boundary representations.
  std::vector<std::pair<std::pair<int, int>, bool>> pairs;
};

/// Uniqueness for every block (i, j) with i, j boundary representations of
/// the factors. Reuses `known` (uniqueness results of the product blocks)
/// when given.
HopenwasserReport verify_hopenwasser(
    const FactorAnalysis& e, const FactorAnalysis& f, const TensorSystem& t,
    const WedderburnData& product, const TensorOptions& opt,
    const std::vector<UniquenessResult>* known = nullptr);

struct LazarReport {
  bool pass = false;
  BlockSet i;
  BlockSet j;
  BlockSet lhs;
  BlockSet rhs;
};

/// I = intersection of the K, J = intersection of the L; compares
/// ker(q_I (x) q_J) with the intersection of the ker(q_K (x) q_L).
LazarReport verify_lazar(int left_blocks, int right_blocks,
                         const std::vector<BlockSet>& k_family,
                         const std::vector<BlockSet>& l_family);

/// sup over (K, L) of ||(q_{K/I} (x) q_{L/J})(x)|| for x in
/// (A/I) (x) (B/J), realised block-diagonally in M_{D_I} (x) M_{D_J}.
/// Throws std::invalid_argument unless the families intersect to I and J.
double lazar_seminorm(const WedderburnData& wa, const WedderburnData& wb,
                      const BlockSet& i, const BlockSet& j,
                      const std::vector<BlockSet>& k_family,
                      const std::vector<BlockSet>& l_family, const Mat& x);

/// dim(S (x) B) computed from the span, together with dim S * dim B and
/// dim A * dim B. For S a proper subspace of A the first is strictly below
/// the last.
struct ProperTensorCheck {
  Eigen::Index span_dim = 0;
  Eigen::Index product_dim = 0;
  Eigen::Index ambient_dim = 0;
  bool pass = false;
};
ProperTensorCheck check_proper_tensor(const MatSubspace& s,
                                      const MatSubspace& a,
                                      const MatSubspace& b,
                                      const Tolerances& tol = {});

/// span{kron(s, t)} over basis pairs.
MatSubspace kron_span(const MatSubspace& s, const MatSubspace& t,
                      const Tolerances& tol = {});

}  // namespace cenv
