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

#include "cenv/falsifier.hpp"
#include "cenv/spectrahedron.hpp"
#include "cenv/wedderburn.hpp"

namespace cenv {

/// Knobs shared by the boundary decision procedures.
struct BoundaryOptions {
  std::uint64_t seed = 1;
  int uniqueness_trials = 32;
  long iteration_cap = 50000;
  int lattice_cap = 6;
  Tolerances tol;
};

/// UCP maps Phi: A -> M_{d_i} with Phi = pi_i on E, in Choi coordinates
/// over all blocks of A; the basepoint is the Choi tuple of pi_i.
/// Throws VerificationError if E is not contained in A.
UcpSpectrahedron ucp_extension_set(const OperatorSystem& e,
                                   const WedderburnData& w, int i,
                                   const Tolerances& tol = {});

/// UCP maps rho: q(A) -> M_n with rho(q(e)) = e for e in E, where q kills
/// the blocks in `killed`.
UcpSpectrahedron left_inverse_set(const OperatorSystem& e,
                                  const WedderburnData& w,
                                  const BlockSet& killed,
                                  const Tolerances& tol = {});

/// Uniqueness decision for every block, in block order. Blocks are tested
/// on worker threads when `jobs` > 1; results do not depend on `jobs`.
std::vector<UniquenessResult> block_uniqueness(const OperatorSystem& e,
                                               const WedderburnData& w,
                                               const BoundaryOptions& opt,
                                               int jobs = 1);

BlockSet boundary_representations(const OperatorSystem& e,
                                  const WedderburnData& w,
                                  const BoundaryOptions& opt);

struct IdealCertificate {
  BlockSet killed;
  FeasibilityResult result;
};

struct SilovResult {
  BlockSet killed;
  BlockSet boundary_reps;
  /// "kernel-intersection" or "lattice-search"
  std::string route;
  std::vector<UniquenessResult> uniqueness;
  std::vector<IdealCertificate> ideals;
};

/// killed = complement of the boundary representations. Throws
/// VerificationError if there are none.
SilovResult silov_ideal_dk(const OperatorSystem& e, const WedderburnData& w,
                           const BoundaryOptions& opt, int jobs = 1);
/// Same, from precomputed uniqueness results.
SilovResult silov_from_uniqueness(std::vector<UniquenessResult> uniq);

/// Whether q_killed restricted to E is completely isometric, decided by the
/// existence of a UCP left inverse.
FeasibilityResult is_boundary_ideal_ucp(const OperatorSystem& e,
                                        const WedderburnData& w,
                                        const BlockSet& killed,
                                        const BoundaryOptions& opt);

/// Evaluates every ideal and returns the unique maximal boundary ideal.
/// Throws VerificationError when the passing ideals have no unique maximum
/// and InputError when the block count exceeds the lattice cap.
SilovResult silov_ideal_lattice(const OperatorSystem& e,
                                const WedderburnData& w,
                                const BoundaryOptions& opt, int jobs = 1);

/// The maximal elements of the passing sets of a lattice evaluation.
std::vector<BlockSet> maximal_passing(const std::vector<IdealCertificate>& ideals);

/// q restricted to E as a LinearMap.
LinearMap restricted_quotient(const OperatorSystem& e, const WedderburnData& w,
                              const BlockSet& killed);

/// The quotient algebra q(A), realised block-diagonally in M_D with
/// D = sum of the kept block sizes, and the embedding of E into it.
struct Envelope {
  WedderburnData algebra;
  LinearMap embed;
  BlockSet killed;
  /// Image of E inside the envelope.
  MatSubspace image;
};

Envelope quotient_envelope(const OperatorSystem& e, const WedderburnData& w,
                           const BlockSet& killed, const Tolerances& tol = {});

/// Full computation: C*(E), its decomposition, the kernel-intersection
/// Silov ideal and the quotient.
Envelope cstar_envelope(const OperatorSystem& e, const BoundaryOptions& opt);

}  // namespace cenv
