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


#include "cenv/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace cenv {

namespace {

Mat unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

Mat jordan_block(Eigen::Index n) {
  Mat j = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
  return j;
}

/// Rounds to 12 significant decimals so the files stay short and stable.
Mat rounded(const Mat& m) {
  Mat out = m;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    auto r = [](double x) { return std::round(x * 1e12) / 1e12; };
    out(i) = cplx(r(m(i).real()), r(m(i).imag()));
  }
  return out;
}

std::string numbered(const char* stem, int k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%02d", stem, k);
  return buf;
}

/// Random generators in M_3 or M_4 of one of three kinds: dense, a direct
/// sum of independent blocks, or a block together with a compression of it
/// (g (+) V^* g V for an isometry V), which has a nonzero Silov ideal.
SystemSpec random_spec(std::uint64_t seed, std::string name) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_n(3, 4), pick_g(2, 3), pick_kind(0, 2);
  const Eigen::Index n = pick_n(rng);
  const int ng = pick_g(rng);
  const int kind = pick_kind(rng);
  SystemSpec s;
  s.name = std::move(name);
  s.ambient_dim = n;
  const Eigen::Index a = n - 1;  // leading block for the split kinds
  Mat v = random_unitary(a, rng).leftCols(1);
  for (int k = 0; k < ng; ++k) {
    Mat g = Mat::Zero(n, n);
    if (kind == 0) {
      g = random_complex(n, n, rng);
    } else {
      g.topLeftCorner(a, a) = random_complex(a, a, rng);
      g(a, a) = kind == 1 ? random_complex(1, 1, rng)(0, 0)
                          : (v.adjoint() * g.topLeftCorner(a, a) * v)(0, 0);
    }
    g /= op_norm(g);
    s.generators.push_back(rounded(g));
  }
  return s;
}

}  // namespace

SystemSpec full_matrix_spec(Eigen::Index d) {
  SystemSpec s;
  s.name = "full_M" + std::to_string(d);
  s.ambient_dim = d;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i; j < d; ++j)
      if (i != j || i > 0) s.generators.push_back(unit(d, i, j));
  return s;
}

SystemSpec jordan_spec(Eigen::Index n, int k) {
  SystemSpec s;
  s.name = "jordan_M" + std::to_string(n) + (k > 1 ? "_k" + std::to_string(k) : "");
  s.ambient_dim = n;
  const Mat j = jordan_block(n);
  Mat p = j;
  for (int e = 1; e <= k; ++e) {
    s.generators.push_back(p);
    p = p * j;
  }
  return s;
}

SystemSpec state_sum_spec(Eigen::Index n, cplx lambda, std::string name) {
  SystemSpec s;
  s.name = std::move(name);
  s.ambient_dim = n + 1;
  Mat g = Mat::Zero(n + 1, n + 1);
  g.topLeftCorner(n, n) = jordan_block(n);
  g(n, n) = lambda;
  s.generators.push_back(rounded(g));
  return s;
}

SystemSpec state_sum_example() { return state_sum_spec(2, 0.5, "state_sum"); }

std::vector<CorpusEntry> corpus_entries(std::uint64_t seed, int count) {
  std::vector<CorpusEntry> out;
  auto add = [&](SystemSpec s, std::string family, std::uint64_t sd) {
    if (static_cast<int>(out.size()) >= count) return;
    CorpusEntry e;
    e.file = s.name + ".json";
    e.spec = std::move(s);
    e.family = std::move(family);
    e.seed = sd;
    out.push_back(std::move(e));
  };
  add(full_matrix_spec(1), "full", 0);
  add(full_matrix_spec(2), "full", 0);
  add(jordan_spec(2, 1), "jordan", 0);
  add(state_sum_example(), "state_sum", 0);
  add(full_matrix_spec(3), "full", 0);
  add(jordan_spec(3, 1), "jordan", 0);
  add(jordan_spec(3, 2), "jordan", 0);
  add(jordan_spec(4, 3), "jordan", 0);
  // Seeded states: inside the numerical range of J_n, then outside it.
  for (int k = 0; k < 4; ++k) {
    const std::uint64_t sd = derive_seed(seed, 0x57A7E, static_cast<std::uint64_t>(k));
    std::mt19937_64 rng(sd);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Eigen::Index n = k < 2 ? 2 : 3;
    const double radius = std::cos(std::numbers::pi / static_cast<double>(n + 1));
    const double r = k % 2 == 0 ? 0.9 * radius * u(rng) : radius + (1.0 - radius) * u(rng) + 0.05;
    const double th = 2.0 * std::numbers::pi * u(rng);
    add(state_sum_spec(n, std::polar(r, th), numbered("state_sum", k)), "state_sum", sd);
  }
  for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
    const std::uint64_t sd = derive_seed(seed, 0x7A5D, static_cast<std::uint64_t>(k));
    add(random_spec(sd, numbered("random", k)), "random", sd);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> corpus_pairs(
    const std::vector<CorpusEntry>& entries) {
  const std::vector<std::pair<std::string, std::string>> wanted = {
      {"full_M2", "full_M2"},       {"full_M2", "jordan_M2"},
      {"state_sum", "full_M2"},     {"jordan_M2", "jordan_M2"},
      {"state_sum", "jordan_M2"},   {"state_sum", "state_sum"},
      {"full_M1", "jordan_M2"},     {"full_M1", "state_sum"},
      {"state_sum_00", "jordan_M2"}, {"state_sum_01", "full_M2"},
      {"jordan_M3", "full_M1"},     {"full_M3", "full_M1"},
  };
  auto has = [&](const std::string& name) {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const CorpusEntry& e) { return e.spec.name == name; });
  };
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : wanted)
    if (has(a) && has(b)) out.emplace_back(a + ".json", b + ".json");
  return out;
}

}  // namespace cenv
