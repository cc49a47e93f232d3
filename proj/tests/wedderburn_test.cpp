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

#include <algorithm>

#include "cenv/corpus.hpp"
#include "cenv/wedderburn.hpp"

using namespace cenv;

namespace {

std::vector<std::pair<Eigen::Index, Eigen::Index>> multiset(const WedderburnData& w) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  for (const Block& b : w.blocks) out.emplace_back(b.dim, b.mult);
  std::sort(out.begin(), out.end());
  return out;
}

void check_invariants(const WedderburnData& w) {
  Eigen::Index sum_d2 = 0, sum_m2 = 0;
  for (const Block& b : w.blocks) {
    sum_d2 += b.dim * b.dim;
    sum_m2 += b.mult * b.mult;
  }
  CHECK(sum_d2 == w.algebra.space.dim());
  CHECK(commutant(w.algebra).dim() == sum_m2);
  CHECK(check_wedderburn(w).empty());
  for (int i = 0; i < w.num_blocks(); ++i) CHECK(is_irreducible(w, i));
}

}  // namespace

TEST_SUITE("wedderburn") {

TEST_CASE("state-sum example splits as M2 (+) C") {
  OperatorSystem e = to_operator_system(state_sum_example());
  WedderburnData w = wedderburn_decompose(generated_cstar(e), 1);
  REQUIRE(w.num_blocks() == 2);
  CHECK(w.blocks[0].dim == 2);
  CHECK(w.blocks[1].dim == 1);
  check_invariants(w);
  CHECK(center(w.algebra).dim() == 2);
}

TEST_CASE("multiplicity two") {
  // {a (+) a} inside M4.
  Mat x = Mat::Zero(4, 4);
  x(0, 1) = 1.0;
  x(2, 3) = 1.0;
  OperatorSystem e = opsys_from_generators(4, std::vector<Mat>{x});
  WedderburnData w = wedderburn_decompose(generated_cstar(e), 3);
  REQUIRE(w.num_blocks() == 1);
  CHECK(w.blocks[0].dim == 2);
  CHECK(w.blocks[0].mult == 2);
  check_invariants(w);
}

TEST_CASE("invariants and seed stability on the corpus") {
  for (const CorpusEntry& c : corpus_entries(1, 20)) {
    CAPTURE(c.spec.name);
    OperatorSystem e = to_operator_system(c.spec);
    CStarAlgebra a = generated_cstar(e);
    WedderburnData w1 = wedderburn_decompose(a, 1);
    check_invariants(w1);
    for (std::uint64_t seed : {2u, 3u})
      CHECK(multiset(wedderburn_decompose(a, seed)) == multiset(w1));
  }
}

TEST_CASE("ideal enumeration and set helpers") {
  auto ideals = enumerate_ideals(3);
  REQUIRE(ideals.size() == 8);
  CHECK(ideals.front().empty());
  CHECK(ideals[1] == BlockSet{0});
  CHECK(ideals[4] == BlockSet{0, 1});
  CHECK(ideals.back() == BlockSet{0, 1, 2});
  CHECK(complement(BlockSet{1}, 3) == BlockSet{0, 2});
  CHECK(set_union(BlockSet{0}, BlockSet{2}) == BlockSet{0, 2});
  CHECK(set_intersection(BlockSet{0, 1}, BlockSet{1, 2}) == BlockSet{1});
  CHECK(is_subset(BlockSet{1}, BlockSet{0, 1}));
}

TEST_CASE("quotient maps and ideal subspaces") {
  OperatorSystem e = to_operator_system(state_sum_example());
  WedderburnData w = wedderburn_decompose(generated_cstar(e), 1);
  QuotientMap q = quotient_map(w, BlockSet{1});
  CHECK(q.target_dim == 2);
  Mat g = e.space.basis()[1];
  CHECK(q(g).rows() == 2);
  // Killing the scalar block leaves a 1-dimensional kernel.
  CHECK(ideal_subspace(w, BlockSet{1}).dim() == 1);
  CHECK(ideal_subspace(w, BlockSet{0}).dim() == 4);
  CHECK(ideal_subspace(w, BlockSet{}).dim() == 0);
  CHECK_THROWS_AS(quotient_map(w, BlockSet{2}), std::invalid_argument);
}

}  // TEST_SUITE
