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
#include <vector>

#include "cenv/linalg.hpp"

namespace cenv {

/// A tuple of Choi matrices J_b in M_{d_b} (x) M_d, one per source block.
/// Block entries follow J_b[(k d + p), (l d + q)] = Phi_b(E_kl)[p, q].
using ChoiTuple = std::vector<Mat>;

double tuple_norm(const ChoiTuple& a);
double tuple_distance(const ChoiTuple& a, const ChoiTuple& b);
/// Re sum_b <a_b, b_b>.
double tuple_inner(const ChoiTuple& a, const ChoiTuple& b);
/// Row-major re/im flattening, blocks concatenated.
std::vector<double> flatten_re(const ChoiTuple& a);
std::vector<double> flatten_im(const ChoiTuple& a);

/// Choi matrix of the identity map on M_d.
Mat identity_choi(Eigen::Index d);

/// Phi(x) for the map with Choi tuple j, x given block-wise.
Mat apply_choi(const ChoiTuple& j, std::span<const Mat> x, Eigen::Index d);

/// The set of completely positive maps Phi = sum_b Phi_b from
/// M_{d_1} + ... + M_{d_r} to M_d with Phi(x_k) = t_k for a list of
/// Hermitian constraint elements x_k (given block-wise).
///
/// Each output entry (p, q) of Phi only sees the slice
/// Y_{pq} = (J_b[(k,p),(l,q)])_{b,k,l}, and every constraint acts on every
/// slice through the same K x sum d_b^2 matrix C. The affine projection is
/// therefore a projection against the row space of the small matrix C,
/// applied to all d^2 slices at once.
class UcpSpectrahedron {
 public:
  UcpSpectrahedron(std::vector<Eigen::Index> source_dims,
                   Eigen::Index target_dim,
                   std::vector<std::vector<Mat>> constraint_elements,
                   std::vector<Mat> targets, const Tolerances& tol = {});

  const std::vector<Eigen::Index>& source_dims() const { return dims_; }
  Eigen::Index target_dim() const { return d_; }
  std::size_t num_constraints() const { return targets_.size(); }
  const std::vector<std::vector<Mat>>& constraint_elements() const {
    return elems_;
  }
  const std::vector<Mat>& targets() const { return targets_; }

  /// Real dimension of the Hermitian Choi space.
  Eigen::Index num_variables() const;
  /// Real dimension of the direction space of the affine slice.
  Eigen::Index null_dim() const;
  /// Whether some Hermitian tuple satisfies the equality constraints.
  bool affine_feasible() const { return affine_feasible_; }

  ChoiTuple zero() const;
  /// Minimum-norm solution of the equality constraints.
  const ChoiTuple& min_norm_point() const { return ls_; }
  ChoiTuple project_affine(const ChoiTuple& j) const;
  /// Orthogonal projection onto the normal space of the affine slice.
  ChoiTuple project_normal(const ChoiTuple& j) const;
  ChoiTuple project_psd(const ChoiTuple& j) const;
  /// sqrt(sum_k ||Phi(x_k) - t_k||_HS^2).
  double constraint_residual(const ChoiTuple& j) const;
  /// Smallest eigenvalue over all blocks.
  double min_eigenvalue(const ChoiTuple& j) const;

  /// Levenberg-Marquardt on J_b = Z_b Z_b^* seeded from the dominant
  /// eigenvectors of `near`. Returns a tuple that is PSD by construction and
  /// meets the equalities to 1e-2 tol.rank relative, or nothing. Results
  /// within `sep` of `avoid` are rejected and the next rank cut is tried.
  std::optional<ChoiTuple> polish(const ChoiTuple& near,
                                  const ChoiTuple* avoid = nullptr,
                                  double sep = 0.0) const;

  /// Set by the builders; unused by the projections.
  std::optional<ChoiTuple> basepoint;

 private:
  Mat to_slices(const ChoiTuple& j) const;
  ChoiTuple from_slices(const Mat& y) const;

  std::vector<Eigen::Index> dims_;
  std::vector<Eigen::Index> offsets_;
  Eigen::Index ns_ = 0;
  Eigen::Index d_ = 0;
  std::vector<std::vector<Mat>> elems_;
  std::vector<Mat> targets_;
  Tolerances tol_;
  Mat c_;        // K x ns constraint matrix
  Mat t_;        // K x d^2 targets
  Mat vr_;       // ns x rank, orthonormal row space of C
  Mat y_ls_;     // ns x d^2
  ChoiTuple ls_;
  Eigen::Index rank_ = 0;
  bool affine_feasible_ = false;
};

struct UniquenessResult {
  bool unique = false;
  /// "exact-nullspace", "interior", "probes", "witness"
  std::string method;
  std::optional<ChoiTuple> witness;
  double witness_distance = 0.0;
  int trials_run = 0;
  long iterations = 0;
};

/// Decides whether the spectrahedron is the singleton {basepoint}.
/// Throws InconclusiveError when a probe hits the iteration cap.
UniquenessResult is_unique_ucp_extension(const UcpSpectrahedron& s,
                                         std::uint64_t seed, int trials,
                                         const Tolerances& tol = {},
                                         long iteration_cap = 50000);

struct FeasibilityResult {
  bool feasible = false;
  /// "affine-infeasible", "empty", "converged", "polished",
  /// "separation", "exact"
  std::string method;
  std::optional<ChoiTuple> point;
  /// For "separation": <W, J> = kappa on the affine slice while
  /// <W, J> >= bound for every PSD tuple of the right total trace.
  double kappa = 0.0;
  double bound = 0.0;
  long iterations = 0;
};

/// Decides whether the spectrahedron is nonempty. `trace` is the total
/// trace sum_b tr J_b implied by the unit constraint. Throws
/// InconclusiveError at the iteration cap.
FeasibilityResult find_feasible_point(const UcpSpectrahedron& s, double trace,
                                      const Tolerances& tol = {},
                                      long iteration_cap = 50000);

}  // namespace cenv
