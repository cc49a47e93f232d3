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

#include "cenv/corpus.hpp"
#include "cenv/errors.hpp"
#include "cenv/propagation.hpp"
#include "cenv/tensor.hpp"

using namespace cenv;

TEST_SUITE("propagation") {

TEST_CASE("full matrix algebras have propagation number one") {
  for (Eigen::Index d = 1; d <= 3; ++d) {
    PropResult p = propagation_number(to_operator_system(full_matrix_spec(d)),
                                      BoundaryOptions{});
    CHECK(p.value == 1);
    CHECK(p.chain == std::vector<Eigen::Index>{d * d});
  }
}

TEST_CASE("Jordan block and state-sum example") {
  PropResult x = propagation_number(to_operator_system(jordan_spec(2, 1)), BoundaryOptions{});
  CHECK(x.value == 2);
  CHECK(x.chain == std::vector<Eigen::Index>{3, 4});
  CHECK(x.tail == std::vector<Eigen::Index>{4, 4});
  OperatorSystem ec = to_operator_system(state_sum_example());
  PropResult c = propagation_number(ec, BoundaryOptions{});
  CHECK(c.value == 2);
  CHECK(c.envelope_dim == 4);
  // Inside C*(E) the chain reaches dimension 5 instead.
  CHECK(ambient_chain(ec).back() == 5);
  PropResult j3 = propagation_number(to_operator_system(jordan_spec(3, 1)), BoundaryOptions{});
  CHECK(j3.value == 3);
}

TEST_CASE("powers commute with the tensor product") {
  OperatorSystem ex = to_operator_system(jordan_spec(2, 1));
  OperatorSystem ec = to_operator_system(state_sum_example());
  PowerTensorReport xx = verify_power_tensor(ex, ex, 3);
  CHECK(xx.pass);
  CHECK(xx.power_of_tensor == std::vector<Eigen::Index>{9, 16, 16});
  PowerTensorReport cx = verify_power_tensor(ec, ex, 3);
  CHECK(cx.pass);
  CHECK(cx.power_of_tensor[1] == 20);
  CHECK(cx.tensor_of_powers[1] == 20);
}

TEST_CASE("propagation of a product is the maximum") {
  TensorOptions opt;
  opt.falsifier_trials = 100;
  auto run = [&](const SystemSpec& a, const SystemSpec& b) {
    FactorAnalysis fa = analyze_factor(to_operator_system(a), opt);
    FactorAnalysis fb = analyze_factor(to_operator_system(b), opt);
    TensorSystem t;
    WedderburnData w;
    MainTheoremReport m = verify_main_theorem(fa, fb, opt, &t, &w);
    REQUIRE(m.pass);
    return verify_prop_max(quotient_envelope(fa.system, fa.wedderburn, fa.dk.killed),
                           quotient_envelope(fb.system, fb.wedderburn, fb.dk.killed),
                           quotient_envelope(t.product, w, m.product_dk.killed));
  };
  PropMaxReport mm = run(full_matrix_spec(2), full_matrix_spec(2));
  CHECK(mm.pass);
  CHECK(mm.product.value == 1);
  PropMaxReport mx = run(full_matrix_spec(2), jordan_spec(2, 1));
  CHECK(mx.pass);
  CHECK(mx.product.value == 2);
  PropMaxReport cx = run(state_sum_example(), jordan_spec(2, 1));
  CHECK(cx.pass);
  CHECK(cx.product.value == 2);
  CHECK(cx.product.value >= cx.left.value);
}

TEST_CASE("a chain that stalls below the envelope is an error") {
  OperatorSystem ex = to_operator_system(jordan_spec(2, 1));
  Envelope env = cstar_envelope(ex, BoundaryOptions{});
  // Shrink the image to the scalars: its powers never fill M2.
  env.image = span_of(std::vector<Mat>{Mat::Identity(2, 2)}, 2);
  CHECK_THROWS_AS(propagation_number(env), VerificationError);
}

}  // TEST_SUITE
