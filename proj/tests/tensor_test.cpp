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

#include "cenv/corpus.hpp"
#include "cenv/errors.hpp"
#include "cenv/tensor.hpp"

using namespace cenv;

namespace {

Mat unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

WedderburnData decompose(const OperatorSystem& e) {
  return wedderburn_decompose(generated_cstar(e), 1);
}

/// M2 (+) C (+) C in M4.
WedderburnData three_blocks() {
  return decompose(opsys_from_generators(
      4, std::vector<Mat>{unit(4, 0, 1), unit(4, 2, 2), unit(4, 3, 3)}));
}

Mat random_element(const WedderburnData& w, std::mt19937_64& rng) {
  CVec c = random_complex(w.algebra.space.dim(), 1, rng).col(0);
  return w.algebra.space.from_coordinates(c);
}

}  // namespace

TEST_SUITE("tensor") {

TEST_CASE("min tensor of operator systems and algebras") {
  OperatorSystem ex = to_operator_system(jordan_spec(2, 1));
  OperatorSystem ec = to_operator_system(state_sum_example());
  TensorSystem t = min_tensor(ec, ex);
  CHECK(t.product.ambient == 6);
  CHECK(t.product.space.dim() == 9);
  CHECK(check_operator_system(t.product).empty());
  CStarAlgebra a = min_tensor(generated_cstar(ec), generated_cstar(ex));
  CHECK(a.space.dim() == 20);
  CHECK(subspace_equal(a.space, generated_cstar(t.product).space));
}

TEST_CASE("pair indexing") {
  CHECK(pair_index(1, 0, 2) == 2);
  CHECK(pair_of(3, 2) == std::pair<int, int>{1, 1});
}

TEST_CASE("product blocks agree with a direct decomposition") {
  OperatorSystem ec = to_operator_system(state_sum_example());
  WedderburnData w = decompose(ec);
  WedderburnData p = product_blocks(w, w);
  REQUIRE(p.num_blocks() == 4);
  CHECK(p.blocks[0].dim == 4);
  CHECK(p.blocks[1].dim == 2);
  CHECK(p.blocks[1].label == std::vector<int>{0, 1});
  CHECK(check_wedderburn(p).empty());
  WedderburnData direct = wedderburn_decompose(min_tensor(w.algebra, w.algebra), 5);
  CHECK(compare_decompositions(p, direct).empty());
}

TEST_CASE("tensor kernels as block sets") {
  CHECK(kernel_of_tensor_quotients({}, 2, {}, 2).empty());
  CHECK(kernel_of_tensor_quotients({1}, 2, {}, 1) == BlockSet{1});
  CHECK(kernel_of_tensor_quotients({1}, 2, {1}, 2) == BlockSet{1, 2, 3});
  // Monotone in both arguments.
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 4; ++b) {
      BlockSet i, j;
      for (int k = 0; k < 3; ++k)
        if (a >> k & 1) i.push_back(k);
      for (int k = 0; k < 2; ++k)
        if (b >> k & 1) j.push_back(k);
      BlockSet base = kernel_of_tensor_quotients(i, 3, j, 2);
      CHECK(is_subset(base, kernel_of_tensor_quotients(set_union(i, {0}), 3, j, 2)));
      CHECK(is_subset(base, kernel_of_tensor_quotients(i, 3, set_union(j, {1}), 2)));
    }
}

TEST_CASE("tensor kernel subspace matches the block set") {
  OperatorSystem ec = to_operator_system(state_sum_example());
  WedderburnData w = decompose(ec);
  WedderburnData p = product_blocks(w, w);
  MatSubspace s = tensor_quotient_kernel(w, {1}, w, {1});
  CHECK(subspace_equal(s, ideal_subspace(p, kernel_of_tensor_quotients({1}, 2, {1}, 2))));
}

TEST_CASE("intersections of tensor kernels") {
  LazarReport r = verify_lazar(2, 1, {{0}, {1}}, {{}});
  CHECK(r.i.empty());
  CHECK(r.lhs.empty());
  CHECK(r.pass);
  LazarReport single = verify_lazar(3, 2, {{0, 2}}, {{1}});
  CHECK(single.pass);
  CHECK(single.lhs == kernel_of_tensor_quotients({0, 2}, 3, {1}, 2));
  std::mt19937_64 rng(derive_seed(1, 0x1A2));
  std::uniform_int_distribution<int> mask3(0, 7), mask2(0, 3), size(1, 3);
  for (int t = 0; t < 100; ++t) {
    std::vector<BlockSet> ks, ls;
    for (int k = size(rng); k > 0; --k) {
      BlockSet s;
      const int m = mask3(rng);
      for (int b = 0; b < 3; ++b)
        if (m >> b & 1) s.push_back(b);
      ks.push_back(s);
    }
    for (int k = size(rng); k > 0; --k) {
      BlockSet s;
      const int m = mask2(rng);
      for (int b = 0; b < 2; ++b)
        if (m >> b & 1) s.push_back(b);
      ls.push_back(s);
    }
    CHECK(verify_lazar(3, 2, ks, ls).pass);
  }
  CHECK_THROWS_AS(verify_lazar(3, 2, {}, {{}}), std::invalid_argument);
}

TEST_CASE("the seminorm of the family is the norm") {
  WedderburnData wa = three_blocks();
  WedderburnData wb = decompose(to_operator_system(state_sum_example()));
  REQUIRE(wa.num_blocks() == 3);
  const std::vector<BlockSet> kf{{0, 1}, {1, 2}};
  const std::vector<BlockSet> lf{{0}, {1}};
  const BlockSet i{1}, j{};
  QuotientMap qa = quotient_map(wa, i), qb = quotient_map(wb, j);
  const Eigen::Index n = qa.target_dim * qb.target_dim;
  CHECK(lazar_seminorm(wa, wb, i, j, kf, lf, Mat::Identity(n, n)) ==
        doctest::Approx(1.0));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    Mat x = Mat::Zero(n, n);
    for (int k = 0; k < 2; ++k)
      x += kron(qa(random_element(wa, rng)), qb(random_element(wb, rng)));
    CHECK(std::abs(lazar_seminorm(wa, wb, i, j, kf, lf, x) - op_norm(x)) <=
          1e-9 * std::max(1.0, op_norm(x)));
  }
  CHECK_THROWS_AS(lazar_seminorm(wa, wb, {}, j, kf, lf, Mat::Identity(n, n)),
                  std::invalid_argument);
}

TEST_CASE("tensor products of complete isometries stay completely isometric") {
  std::mt19937_64 rng(derive_seed(1, 0x33));
  auto isometry = [&](const OperatorSystem& e, Eigen::Index m) {
    // x -> V^* x V for an isometry V: C^n -> C^m composed with a unitary.
    Mat v = random_unitary(m, rng).leftCols(e.ambient);
    return make_linear_map(
        e.space, [v](const Mat& x) { return Mat(v * x * v.adjoint()); }, m);
  };
  OperatorSystem ex = to_operator_system(jordan_spec(2, 1));
  OperatorSystem ec = to_operator_system(state_sum_example());
  LinearMap phi = tensor_map(isometry(ex, 3), isometry(ec, 3));
  CHECK_FALSE(falsify_complete_isometry(phi, 500, 17));
}

TEST_CASE("a proper subspace tensored stays proper") {
  OperatorSystem ex = to_operator_system(jordan_spec(2, 1));
  CStarAlgebra a = generated_cstar(ex);
  CStarAlgebra b = generated_cstar(to_operator_system(state_sum_example()));
  ProperTensorCheck c = check_proper_tensor(ex.space, a.space, b.space);
  CHECK(c.pass);
  CHECK(c.span_dim == 15);
  CHECK(c.ambient_dim == 20);
  CHECK(check_proper_tensor(a.space, a.space, b.space).span_dim == 20);
}

TEST_CASE("main theorem on the state-sum example and the Jordan block") {
  TensorOptions opt;
  opt.falsifier_trials = 200;
  FactorAnalysis ec = analyze_factor(to_operator_system(state_sum_example()), opt);
  FactorAnalysis ex = analyze_factor(to_operator_system(jordan_spec(2, 1)), opt);
  TensorSystem t;
  WedderburnData p;
  MainTheoremReport r = verify_main_theorem(ec, ex, opt, &t, &p);
  CHECK(r.pass);
  CHECK(r.product_dk.killed == BlockSet{1});
  CHECK(r.kernel == BlockSet{1});
  CHECK(r.envelope_dims == std::vector<Eigen::Index>{4});
  HopenwasserReport h = verify_hopenwasser(ec, ex, t, p, opt);
  CHECK(h.pass);
  REQUIRE(h.pairs.size() == 1);
  CHECK(h.pairs[0].first == std::pair<int, int>{0, 0});
}

TEST_CASE("ambient cap") {
  TensorOptions opt;
  opt.max_ambient_product = 8;
  FactorAnalysis ec = analyze_factor(to_operator_system(state_sum_example()), opt);
  CHECK_THROWS_AS(verify_main_theorem(ec, ec, opt), InputError);
}

}  // TEST_SUITE
