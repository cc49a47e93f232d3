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
#include <vector>

#include "cenv/opsys.hpp"

namespace cenv {

/// Sorted, 0-based block indices. Used for killed sets of ideals and for
/// sets of boundary representations.
using BlockSet = std::vector<int>;

/// One isotypic component: `mult` copies of a `dim`-dimensional irrep. Each
/// copy is an n x dim isometry B_k, and pi(a) = B_k^* a B_k for every k.
struct Block {
  Eigen::Index dim = 0;
  Eigen::Index mult = 0;
  std::vector<Mat> copies;
  /// Set by product decompositions: the (left, right) factor blocks.
  std::vector<int> label;
};

struct WedderburnData {
  CStarAlgebra algebra;
  /// Rows are the conjugates of the copy columns, in block-then-copy order,
  /// so u a u^* is block diagonal.
  Mat u;
  std::vector<Block> blocks;

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  /// pi_i(a), read off the first copy.
  Mat irrep(int i, const Mat& a) const;
  /// pi_i on the algebra basis.
  std::vector<Mat> irrep_on_basis(int i) const;
};

MatSubspace commutant(const CStarAlgebra& a, const Tolerances& tol = {});
MatSubspace center(const CStarAlgebra& a, const Tolerances& tol = {});

/// Seeded numerical Artin-Wedderburn decomposition. Retries up to three
/// times with derived seeds; throws VerificationError if no attempt passes
/// the residual checks.
WedderburnData wedderburn_decompose(const CStarAlgebra& a, std::uint64_t seed,
                                    const Tolerances& tol = {});

/// Assembles u from the copies of `blocks`.
Mat assemble_unitary(const std::vector<Block>& blocks, Eigen::Index n);

/// Residual checks on W; empty string on success.
std::string check_wedderburn(const WedderburnData& w,
                             const Tolerances& tol = {});

/// All subsets of {0, ..., num_blocks-1} ordered by (cardinality,
/// lexicographic).
std::vector<BlockSet> enumerate_ideals(int num_blocks);

BlockSet complement(const BlockSet& s, int num_blocks);
bool is_subset(const BlockSet& a, const BlockSet& b);
BlockSet set_union(const BlockSet& a, const BlockSet& b);
BlockSet set_intersection(const BlockSet& a, const BlockSet& b);

/// q(a) = direct sum of pi_i(a) over blocks not in `killed`.
struct QuotientMap {
  const WedderburnData* source = nullptr;
  BlockSet killed;
  BlockSet kept;
  Eigen::Index target_dim = 0;

  Mat operator()(const Mat& a) const;
};

/// Throws std::invalid_argument on an out-of-range index.
QuotientMap quotient_map(const WedderburnData& w, const BlockSet& killed);

/// The ideal ker q(killed) = {a in A : pi_i(a) = 0 for every i not in
/// killed}, i.e. the elements supported on the killed blocks.
MatSubspace ideal_subspace(const WedderburnData& w, const BlockSet& killed,
                           const Tolerances& tol = {});

/// Whether pi_i(A) has trivial commutant inside M_{d_i}.
bool is_irreducible(const WedderburnData& w, int i, const Tolerances& tol = {});

/// Dimension of {T : T pi_i(g) = pi'_j(g) T for all generators g}.
Eigen::Index intertwiner_dim(const WedderburnData& w, int i,
                             const WedderburnData& w2, int j,
                             const Tolerances& tol = {});

}  // namespace cenv
