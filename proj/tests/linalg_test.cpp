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


#include <doctest.h>

#include <random>

#include "cenv/linalg.hpp"

using namespace cenv;

TEST_SUITE("linalg") {

TEST_CASE("hs inner product and norms") {
  Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
  a(0, 1) = 1.0;
  b(0, 1) = cplx(0.0, 2.0);
  CHECK(std::abs(hs_inner(a, b) - cplx(0.0, 2.0)) < 1e-15);
  CHECK(hs_norm(b) == doctest::Approx(2.0));
  CHECK(op_norm(a) == doctest::Approx(1.0));
  Mat d = Mat::Identity(3, 3);
  d(2, 2) = -4.0;
  CHECK(op_norm(d) == doctest::Approx(4.0));
}

TEST_CASE("kron of units and norm multiplicativity") {
  std::mt19937_64 rng(derive_seed(7, 1));
  Mat e = Mat::Zero(2, 2);
  e(0, 1) = 1.0;
  Mat k = kron(e, Mat::Identity(3, 3));
  CHECK(k.rows() == 6);
  CHECK(std::abs(k(0, 3) - 1.0) < 1e-15);
  for (int t = 0; t < 1000; ++t) {
    Mat a = random_complex(1 + t % 3, 1 + t % 3, rng);
    Mat b = random_complex(1 + t % 4, 1 + t % 4, rng);
    const double lhs = op_norm(kron(a, b));
    CHECK(std::abs(lhs - op_norm(a) * op_norm(b)) <= 1e-9 * lhs);
  }
}

TEST_CASE("hermitian eigensolver residuals") {
  std::mt19937_64 rng(derive_seed(7, 2));
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = 1 + t % 6;
    Mat h = random_hermitian(n, rng);
    HermEig e = herm_eig(h);
    for (Eigen::Index i = 0; i + 1 < n; ++i) CHECK(e.values(i) <= e.values(i + 1));
    const double res = (h * e.vectors - e.vectors * e.values.asDiagonal()).norm();
    CHECK(res <= 1e-10 * std::max(1.0, h.norm()));
    CHECK((e.vectors.adjoint() * e.vectors - Mat::Identity(n, n)).norm() < 1e-10);
  }
}

TEST_CASE("gram schmidt gives an orthonormal basis of the span") {
  std::mt19937_64 rng(derive_seed(7, 3));
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = 2 + t % 3;
    const int k = 1 + t % 4;
    std::vector<Mat> mats;
    for (int i = 0; i < k; ++i) mats.push_back(random_complex(n, n, rng));
    mats.push_back(mats[0] + 2.0 * mats.back());  // dependent
    MatSubspace s = span_of(mats, n);
    CHECK(s.dim() == k);
    for (Eigen::Index i = 0; i < s.dim(); ++i)
      for (Eigen::Index j = 0; j < s.dim(); ++j) {
        const cplx g = hs_inner(s.basis()[static_cast<std::size_t>(i)],
                                s.basis()[static_cast<std::size_t>(j)]);
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
    for (const Mat& m : mats) CHECK(subspace_contains(s, m));
  }
}

TEST_CASE("subspace comparison") {
  Mat e = Mat::Zero(2, 2);
  e(0, 1) = 1.0;
  std::vector<Mat> a{Mat::Identity(2, 2), e};
  std::vector<Mat> b{Mat::Identity(2, 2) + e, Mat::Identity(2, 2) - e};
  CHECK(subspace_equal(span_of(a, 2), span_of(b, 2)));
  CHECK_FALSE(subspace_contains(span_of(a, 2), e.adjoint()));
  CHECK_THROWS_AS(subspace_contains(span_of(a, 2), Mat::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("null space and hermitian coordinates") {
  RMat m(1, 3);
  m << 1.0, 1.0, 0.0;
  RMat ns = null_space(m, 1e-12);
  CHECK(ns.cols() == 2);
  CHECK((m * ns).norm() < 1e-12);
  std::mt19937_64 rng(5);
  Mat h = random_hermitian(4, rng);
  RVec c = herm_to_coords(h);
  CHECK(c.size() == herm_real_dim(4));
  CHECK(c.norm() == doctest::Approx(h.norm()));
  CHECK((coords_to_herm(c, 4) - h).norm() < 1e-14);
}

TEST_CASE("vec matches the kronecker identity") {
  std::mt19937_64 rng(6);
  Mat a = random_complex(2, 2, rng), x = random_complex(2, 2, rng),
      b = random_complex(2, 2, rng);
  CHECK((vec(a * x * b) - kron(b.transpose(), a) * vec(x)).norm() < 1e-12);
  CHECK((unvec(vec(x), 2) - x).norm() == 0.0);
}

TEST_CASE("seeds and tolerances") {
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.rank = 0.0;
  CHECK_THROWS(t.validate());
}

}  // TEST_SUITE
