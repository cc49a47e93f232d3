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

#include "cenv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cenv {

void Tolerances::validate() const {
  for (double t : {rank, psd, herm, ortho, sep, norm}) {
    if (!(t > 0.0) || !std::isfinite(t))
      throw std::invalid_argument("tolerances must be finite and positive");
  }
  if (rank >= 1.0) throw std::invalid_argument("tol_rank must be below 1");
}

cplx hs_inner(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_inner: shape mismatch");
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hs_norm(const Mat& a) { return a.norm(); }

double op_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  // Square of the top eigenvalue of the smaller Gram matrix; accurate for the
  // largest singular value, which is all we need here.
  Mat g = a.rows() <= a.cols() ? Mat(a * a.adjoint()) : Mat(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double hermiticity_defect(const Mat& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void normalise_phase(Eigen::Ref<CVec> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double m = std::abs(v(i));
    if (m > 1e-12) {
      v *= std::conj(v(i)) / m;
      return;
    }
  }
}

bool lex_less(const CVec& a, const CVec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

HermEig herm_eig(const Mat& a, const Tolerances& tol) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("herm_eig: matrix is not square");
  const double scale = std::max(1.0, a.size() ? a.cwiseAbs().maxCoeff() : 0.0);
  if (hermiticity_defect(a) > tol.herm * scale)
    throw std::invalid_argument("herm_eig: matrix is not Hermitian");
  const Eigen::Index n = a.rows();
  HermEig out;
  if (n == 0) return out;
  Mat sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("herm_eig: eigensolver failed");
  Mat vecs = es.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) normalise_phase(vecs.col(j));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const RVec& vals = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) {
                     if (vals(x) != vals(y)) return vals(x) < vals(y);
                     return lex_less(vecs.col(x), vecs.col(y));
                   });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = vals(order[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = vecs.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

CVec vec(const Mat& a) {
  return Eigen::Map<const CVec>(a.data(), a.size());
}

Mat unvec(const CVec& v, Eigen::Index n) {
  return Eigen::Map<const Mat>(v.data(), n, n);
}

MatSubspace::MatSubspace(Eigen::Index ambient)
    : ambient_(ambient), frame_(ambient * ambient, 0) {}

CVec MatSubspace::coordinates(const Mat& a) const {
  if (a.rows() != ambient_ || a.cols() != ambient_)
    throw std::invalid_argument("MatSubspace: ambient mismatch");
  return frame_.adjoint() * vec(a);
}

Mat MatSubspace::project(const Mat& a) const {
  return from_coordinates(coordinates(a));
}

Mat MatSubspace::from_coordinates(const CVec& c) const {
  return unvec(frame_ * c, ambient_);
}

bool MatSubspace::try_append(const Mat& v, double threshold) {
  if (v.rows() != ambient_ || v.cols() != ambient_)
    throw std::invalid_argument("MatSubspace: ambient mismatch");
  CVec r = vec(v);
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index k = 0; k < frame_.cols(); ++k)
      r -= frame_.col(k).dot(r) * frame_.col(k);
  }
  double nr = r.norm();
  if (nr <= threshold || nr == 0.0) return false;
  r /= nr;
  frame_.conservativeResize(Eigen::NoChange, frame_.cols() + 1);
  frame_.col(frame_.cols() - 1) = r;
  basis_.push_back(unvec(r, ambient_));
  return true;
}

MatSubspace span_of(std::span<const Mat> mats, Eigen::Index ambient,
                    const Tolerances& tol) {
  MatSubspace s(ambient);
  double max_norm = 0.0;
  for (const Mat& m : mats) {
    if (m.rows() != ambient || m.cols() != ambient)
      throw std::invalid_argument("span_of: matrix is not ambient x ambient");
    max_norm = std::max(max_norm, m.norm());
  }
  const double threshold = tol.rank * max_norm;
  for (const Mat& m : mats) {
    if (s.dim() == ambient * ambient) break;
    s.try_append(m, threshold);
  }
  return s;
}

bool subspace_contains(const MatSubspace& s, const Mat& a,
                       const Tolerances& tol) {
  if (a.rows() != s.ambient() || a.cols() != s.ambient())
    throw std::invalid_argument("subspace_contains: ambient mismatch");
  const double na = a.norm();
  if (na == 0.0) return true;
  return (a - s.project(a)).norm() <= tol.rank * na;
}

bool subspace_equal(const MatSubspace& s, const MatSubspace& t,
                    const Tolerances& tol) {
  if (s.ambient() != t.ambient())
    throw std::invalid_argument("subspace_equal: ambient mismatch");
  if (s.dim() != t.dim()) return false;
  for (const Mat& b : s.basis())
    if (!subspace_contains(t, b, tol)) return false;
  for (const Mat& b : t.basis())
    if (!subspace_contains(s, b, tol)) return false;
  return true;
}

namespace {

template <typename M>
M null_space_impl(const M& m, double rel_tol) {
  using Scalar = typename M::Scalar;
  const Eigen::Index cols = m.cols();
  if (cols == 0) return M(0, 0);
  if (m.rows() == 0) return M::Identity(cols, cols);
  // Tall systems are compressed to their triangular factor first.
  M square;
  if (m.rows() > cols) {
    Eigen::HouseholderQR<M> qr(m);
    square = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
  } else {
    square = m;
  }
  Eigen::BDCSVD<M> svd(square, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * smax && smax > 0.0) ++rank;
  (void)sizeof(Scalar);
  return svd.matrixV().rightCols(cols - rank);
}

}  // namespace

Mat null_space(const Mat& m, double rel_tol) {
  return null_space_impl<Mat>(m, rel_tol);
}

RMat null_space(const RMat& m, double rel_tol) {
  return null_space_impl<RMat>(m, rel_tol);
}

Eigen::Index numerical_rank(const RMat& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<RMat> svd(m);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0) && s(0) > 0.0) ++rank;
  return rank;
}

Eigen::Index herm_real_dim(Eigen::Index n) { return n * n; }

RVec herm_to_coords(const Mat& h) {
  const Eigen::Index n = h.rows();
  RVec v(n * n);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < n; ++r) v(k++) = h(r, r).real();
  const double s2 = std::sqrt(2.0);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = r + 1; c < n; ++c) {
      v(k++) = s2 * h(r, c).real();
      v(k++) = s2 * h(r, c).imag();
    }
  return v;
}

Mat coords_to_herm(const Eigen::Ref<const RVec>& v, Eigen::Index n) {
  if (v.size() != n * n)
    throw std::invalid_argument("coords_to_herm: size mismatch");
  Mat h(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < n; ++r) h(r, r) = v(k++);
  const double inv = 1.0 / std::sqrt(2.0);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = r + 1; c < n; ++c) {
      cplx z(v(k) * inv, v(k + 1) * inv);
      k += 2;
      h(r, c) = z;
      h(c, r) = std::conj(z);
    }
  return h;
}

MatSubspace hermitian_basis(const MatSubspace& s, const Tolerances& tol) {
  std::vector<Mat> parts;
  parts.reserve(static_cast<std::size_t>(2 * s.dim()));
  const cplx i(0.0, 1.0);
  for (const Mat& b : s.basis()) {
    parts.push_back((b + b.adjoint()) / 2.0);
    parts.push_back((b - b.adjoint()) / (2.0 * i));
  }
  MatSubspace h = span_of(parts, s.ambient(), tol);
  if (h.dim() != s.dim())
    throw std::invalid_argument("hermitian_basis: subspace is not self-adjoint");
  return h;
}

Mat random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      double re = g(rng);
      double im = g(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

Mat random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  Mat g = random_complex(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

Mat random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  Mat g = random_complex(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    double m = std::abs(r(j, j));
    if (m > 0) q.col(j) *= r(j, j) / m;
  }
  return q;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ a) ^ (b * 0xD6E8FEB86659FD93ULL));
}

}  // namespace cenv
