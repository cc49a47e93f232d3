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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace cenv {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Numerical thresholds shared by every decision procedure.
///
/// `rank` is relative to the largest singular value in play; the others are
/// absolute on quantities that are already normalised (unit-trace states,
/// unit-norm operators).
struct Tolerances {
  double rank = 1e-9;
  double psd = 1e-9;
  double herm = 1e-10;
  double ortho = 1e-10;
  double sep = 1e-6;
  double norm = 1e-6;

  /// Throws std::invalid_argument unless all are positive and rank < 1.
  void validate() const;
};

/// trace(a^* b).
cplx hs_inner(const Mat& a, const Mat& b);

/// Hilbert-Schmidt (Frobenius) norm.
double hs_norm(const Mat& a);

/// Largest singular value.
double op_norm(const Mat& a);

Mat kron(const Mat& a, const Mat& b);

/// max |a_ij - conj(a_ji)|; +inf for non-square input.
double hermiticity_defect(const Mat& a);

struct HermEig {
  RVec values;  // ascending
  Mat vectors;  // columns
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascend; each
/// eigenvector is phase-normalised so that its first component of modulus
/// above 1e-12 is real positive, and equal eigenvalues keep the solver's
/// deterministic column order.
HermEig herm_eig(const Mat& a, const Tolerances& tol = {});

/// Column-major vectorisation, matching the Kronecker identity
/// vec(a x b) = (b^T (x) a) vec(x).
CVec vec(const Mat& a);
Mat unvec(const CVec& v, Eigen::Index n);

/// A linear subspace of M_n stored as a Hilbert-Schmidt orthonormal basis.
class MatSubspace {
 public:
  MatSubspace() = default;
  explicit MatSubspace(Eigen::Index ambient);

  Eigen::Index ambient() const { return ambient_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Mat>& basis() const { return basis_; }

  /// n^2 x dim matrix whose columns are vec(basis_i).
  const Mat& frame() const { return frame_; }

  /// Coordinates <b_i, a> of the orthogonal projection onto the subspace.
  CVec coordinates(const Mat& a) const;
  Mat project(const Mat& a) const;
  Mat from_coordinates(const CVec& c) const;

  /// Appends `v` after re-orthogonalising it; returns false (and leaves the
  /// subspace unchanged) when the residual HS norm is at most `threshold`.
  bool try_append(const Mat& v, double threshold);

 private:
  Eigen::Index ambient_ = 0;
  std::vector<Mat> basis_;
  Mat frame_;
};

/// Orthonormal basis of span(mats) by modified Gram-Schmidt with one
/// re-orthogonalisation pass. Residuals of HS norm at most
/// tol.rank * max_i ||mats_i||_HS are discarded.
MatSubspace span_of(std::span<const Mat> mats, Eigen::Index ambient,
                    const Tolerances& tol = {});

bool subspace_contains(const MatSubspace& s, const Mat& a,
                       const Tolerances& tol = {});
bool subspace_equal(const MatSubspace& s, const MatSubspace& t,
                    const Tolerances& tol = {});

/// Orthonormal basis (columns) of the null space of `m`, singular values at
/// most rel_tol * sigma_max counting as zero.
Mat null_space(const Mat& m, double rel_tol);
RMat null_space(const RMat& m, double rel_tol);

/// Numerical rank with the same convention.
Eigen::Index numerical_rank(const RMat& m, double rel_tol);

/// Isometric real coordinates on Herm(N): N diagonal entries followed by
/// sqrt(2) Re and sqrt(2) Im of each strictly upper entry (row-major).
Eigen::Index herm_real_dim(Eigen::Index n);
RVec herm_to_coords(const Mat& h);
Mat coords_to_herm(const Eigen::Ref<const RVec>& v, Eigen::Index n);

/// Orthonormal Hermitian basis of a self-adjoint subspace.
MatSubspace hermitian_basis(const MatSubspace& s, const Tolerances& tol = {});

/// Seeded standard-normal complex matrix (real and imaginary parts N(0,1)).
Mat random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
/// (g + g^*) / 2 for a random complex g.
Mat random_hermitian(Eigen::Index n, std::mt19937_64& rng);
/// Haar-ish unitary from the QR factor of a complex Gaussian matrix.
Mat random_unitary(Eigen::Index n, std::mt19937_64& rng);

/// SplitMix64 mixing of a base seed with tags; used to derive independent
/// deterministic streams for sub-computations.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b = 0);

}  // namespace cenv
