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


// Acceptance run: one PASS/FAIL line per criterion.
//   cenv_acceptance <corpus-dir> <work-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cenv/commands.hpp"
#include "cenv/corpus.hpp"
#include "cenv/errors.hpp"
#include "cenv/pipeline.hpp"
#include "cenv/spec_io.hpp"

using namespace cenv;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Collects failure notes for one criterion.
struct Criterion {
  std::string name;
  std::vector<std::string> notes;
  void fail(const std::string& note) { notes.push_back(note); }
  void expect(bool ok, const std::string& note) {
    if (!ok) fail(note);
  }
};

std::string set_str(const BlockSet& s) {
  std::ostringstream o;
  o << "{";
  for (std::size_t k = 0; k < s.size(); ++k) o << (k ? "," : "") << s[k] + 1;
  o << "}";
  return o.str();
}

/// 1-based (i, j) pairs of product block indices.
std::vector<std::pair<int, int>> as_pairs(const BlockSet& s, int right_blocks) {
  std::vector<std::pair<int, int>> out;
  for (int k : s) {
    auto [i, j] = pair_of(k, right_blocks);
    out.emplace_back(i + 1, j + 1);
  }
  return out;
}

std::string pairs_str(const std::vector<std::pair<int, int>>& p) {
  std::ostringstream o;
  o << "{";
  for (std::size_t k = 0; k < p.size(); ++k)
    o << (k ? "," : "") << "(" << p[k].first << "," << p[k].second << ")";
  o << "}";
  return o.str();
}

struct Loaded {
  std::string name;
  OperatorSystem system;
};

std::vector<Loaded> load_corpus(const fs::path& dir) {
  auto manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
  std::vector<Loaded> out;
  for (const auto& s : manifest.at("systems")) {
    SystemSpec spec = read_system_spec(dir / s.at("file").get<std::string>());
    out.push_back({spec.name, to_operator_system(spec)});
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> load_pairs(const fs::path& dir) {
  auto manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : manifest.at("pairs"))
    out.emplace_back(fs::path(p.at("left").get<std::string>()).stem().string(),
                     fs::path(p.at("right").get<std::string>()).stem().string());
  return out;
}

// Named test systems.
OperatorSystem m2() { return to_operator_system(full_matrix_spec(2)); }
OperatorSystem ex() { return to_operator_system(jordan_spec(2, 1)); }
OperatorSystem ec() { return to_operator_system(state_sum_example()); }

void main_theorem(Criterion& c, const PipelineOptions& opt) {
  struct Case {
    std::string label;
    OperatorSystem left, right;
    std::vector<std::pair<int, int>> killed;
  };
  const std::vector<Case> cases{
      {"M2 x M2", m2(), m2(), {}},
      {"M2 x E_X", m2(), ex(), {}},
      {"E_X x E_X", ex(), ex(), {}},
      {"E_C x M2", ec(), m2(), {{2, 1}}},
      {"E_C x E_X", ec(), ex(), {{2, 1}}},
      {"E_C x E_C", ec(), ec(), {{1, 2}, {2, 1}, {2, 2}}},
  };
  const auto t0 = Clock::now();
  for (const Case& k : cases) {
    SystemAnalysis a = analyze_system(k.left, opt);
    SystemAnalysis b = analyze_system(k.right, opt);
    TensorAnalysis t = analyze_tensor(a, b, opt);
    const int nb = b.wedderburn.num_blocks();
    const auto dk = as_pairs(t.main.product_dk.killed, nb);
    const auto lat = as_pairs(t.main.product_lattice.killed, nb);
    c.expect(t.main.pass, k.label + ": " + t.main.failure);
    c.expect(dk == k.killed, k.label + ": killed " + pairs_str(dk));
    c.expect(lat == k.killed, k.label + ": lattice killed " + pairs_str(lat));
    c.expect(t.main.envelope_ok &&
                 t.main.envelope_dims == std::vector<Eigen::Index>{4},
             k.label + ": envelope blocks differ");
  }
  const double s = seconds_since(t0);
  c.expect(s <= 60.0, "took " + std::to_string(s) + " s");
  std::cout << "  [main theorem: " << cases.size() << " pairs in " << s << " s]\n";
}

void route_agreement(Criterion& c, const std::vector<Loaded>& corpus,
                     const PipelineOptions& base) {
  c.expect(corpus.size() == 20, "corpus has " + std::to_string(corpus.size()) + " systems");
  for (const Loaded& l : corpus) {
    c.expect(l.system.ambient <= 4, l.name + ": ambient above 4");
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      PipelineOptions opt = base;
      opt.boundary.seed = seed;
      SystemAnalysis a = analyze_system(l.system, opt);
      c.expect(a.routes_agree && a.pass,
               l.name + " seed " + std::to_string(seed) + ": DK " +
                   set_str(a.dk.killed) + " lattice " + set_str(a.lattice.killed));
    }
  }
}

struct PairRun {
  std::string label;
  int prop_left = 0, prop_right = 0;
  TensorAnalysis t;
};

std::vector<PairRun> run_pairs(const std::vector<Loaded>& corpus,
                               const std::vector<std::pair<std::string, std::string>>& pairs,
                               const PipelineOptions& opt) {
  std::map<std::string, SystemAnalysis> cache;
  auto get = [&](const std::string& name) -> const SystemAnalysis& {
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    for (const Loaded& l : corpus)
      if (l.name == name) return cache.emplace(name, analyze_system(l.system, opt)).first->second;
    throw InputError("pair names unknown system " + name);
  };
  std::vector<PairRun> out;
  for (const auto& [l, r] : pairs) {
    const SystemAnalysis& a = get(l);
    const SystemAnalysis& b = get(r);
    PairRun p;
    p.label = l + " x " + r;
    p.prop_left = a.propagation ? a.propagation->value : 0;
    p.prop_right = b.propagation ? b.propagation->value : 0;
    p.t = analyze_tensor(a, b, opt);
    out.push_back(std::move(p));
  }
  return out;
}

void prop_max(Criterion& c, const std::vector<PairRun>& runs, const PipelineOptions& opt) {
  int checked = 0;
  bool saw12 = false, saw22 = false;
  for (const PairRun& p : runs) {
    if (!p.t.prop_max) {
      c.fail(p.label + ": not run");
      continue;
    }
    ++checked;
    const auto& r = *p.t.prop_max;
    c.expect(r.pass, p.label + ": prop " + std::to_string(r.product.value));
    const int lo = std::min(r.left.value, r.right.value);
    const int hi = std::max(r.left.value, r.right.value);
    saw12 = saw12 || (lo == 1 && hi == 2);
    saw22 = saw22 || (lo == 2 && hi == 2);
  }
  c.expect(checked >= 8, "only " + std::to_string(checked) + " pairs");
  c.expect(saw12, "no pair with props 1 and 2");
  c.expect(saw22, "no pair with props 2 and 2");
  for (Eigen::Index d = 1; d <= 3; ++d) {
    SystemAnalysis a = analyze_system(to_operator_system(full_matrix_spec(d)), opt);
    c.expect(a.propagation && a.propagation->value == 1,
             "prop(M_" + std::to_string(d) + ") != 1");
  }
  std::cout << "  [prop max: " << checked << " pairs]\n";
}

void power_tensor(Criterion& c, const std::vector<PairRun>& runs) {
  for (const PairRun& p : runs) {
    const auto& r = p.t.power_tensor;
    c.expect(r.n_max == std::max(p.prop_left, p.prop_right) + 1,
             p.label + ": n_max " + std::to_string(r.n_max));
    c.expect(r.pass, p.label + ": fails at n = " + std::to_string(r.failed_n));
  }
}

void hopenwasser(Criterion& c, const std::vector<PairRun>& runs) {
  for (const PairRun& p : runs) {
    c.expect(p.t.hopenwasser.pass, p.label);
    c.expect(!p.t.hopenwasser.pairs.empty(), p.label + ": no boundary pairs");
  }
}

Mat unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

BlockSet random_subset(int blocks, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> mask(0, (1 << blocks) - 1);
  const int m = mask(rng);
  BlockSet s;
  for (int b = 0; b < blocks; ++b)
    if (m >> b & 1) s.push_back(b);
  return s;
}

void lazar(Criterion& c) {
  std::mt19937_64 rng(derive_seed(1, 0x1A2A));
  std::uniform_int_distribution<int> size(1, 3);
  for (int t = 0; t < 100; ++t) {
    std::vector<BlockSet> ks, ls;
    for (int k = size(rng); k > 0; --k) ks.push_back(random_subset(3, rng));
    for (int k = size(rng); k > 0; --k) ls.push_back(random_subset(2, rng));
    LazarReport r = verify_lazar(3, 2, ks, ls);
    c.expect(r.pass, "draw " + std::to_string(t) + ": " + set_str(r.lhs) + " vs " +
                         set_str(r.rhs));
  }

  // M2 (+) C (+) C in M4, and C*(E_C) = M2 (+) C.
  const WedderburnData wa = wedderburn_decompose(
      generated_cstar(opsys_from_generators(
          4, std::vector<Mat>{unit(4, 0, 1), unit(4, 2, 2), unit(4, 3, 3)})),
      1);
  const WedderburnData wb = wedderburn_decompose(generated_cstar(ec()), 1);
  if (wa.num_blocks() != 3 || wb.num_blocks() != 2) {
    c.fail("unexpected block counts");
    return;
  }
  struct Config {
    std::vector<BlockSet> kf, lf;
  };
  const std::vector<Config> configs{
      {{{0, 1}, {1, 2}}, {{0}, {1}}},
      {{{0}, {1}, {2}}, {{1}}},
      {{{0, 2}, {2}}, {{0, 1}, {1}}},
      {{{1, 2}}, {{0}, {0, 1}}},
  };
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    const Config& cf = configs[ci];
    BlockSet i = cf.kf[0], j = cf.lf[0];
    for (const BlockSet& k : cf.kf) i = set_intersection(i, k);
    for (const BlockSet& l : cf.lf) j = set_intersection(j, l);
    QuotientMap qa = quotient_map(wa, i), qb = quotient_map(wb, j);
    const Eigen::Index n = qa.target_dim * qb.target_dim;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      Mat x = Mat::Zero(n, n);
      for (int k = 0; k < 2; ++k) {
        Mat a = wa.algebra.space.from_coordinates(
            random_complex(wa.algebra.space.dim(), 1, rng).col(0));
        Mat b = wb.algebra.space.from_coordinates(
            random_complex(wb.algebra.space.dim(), 1, rng).col(0));
        x += kron(qa(a), qb(b));
      }
      const double nx = op_norm(x);
      const double err = std::abs(lazar_seminorm(wa, wb, i, j, cf.kf, cf.lf, x) - nx) /
                         std::max(1.0, nx);
      worst = std::max(worst, err);
    }
    c.expect(worst <= 1e-9, "configuration " + std::to_string(ci + 1) +
                                ": relative error " + std::to_string(worst));
  }
}

void falsifier(Criterion& c) {
  const Tolerances tol;
  const OperatorSystem e = ec();
  const WedderburnData w = wedderburn_decompose(generated_cstar(e), 1);
  const LinearMap keep_scalar = restricted_quotient(e, w, BlockSet{0});
  const LinearMap keep_matrix = restricted_quotient(e, w, BlockSet{1});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto hit = falsify_complete_isometry(keep_scalar, 1000, seed, tol);
    c.expect(hit && hit->gap >= 0.5 - tol.norm,
             "killed {1}, seed " + std::to_string(seed) + ": no gap found");
    auto miss = falsify_complete_isometry(keep_matrix, 1000, seed, tol);
    c.expect(!miss, "killed {2}, seed " + std::to_string(seed) + ": spurious gap");
  }
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> block_multiset(const WedderburnData& w) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  for (const Block& b : w.blocks) out.emplace_back(b.dim, b.mult);
  std::sort(out.begin(), out.end());
  return out;
}

void structural(Criterion& c, const std::vector<Loaded>& corpus) {
  for (const Loaded& l : corpus) {
    const CStarAlgebra a = generated_cstar(l.system);
    const WedderburnData w = wedderburn_decompose(a, 1);
    const std::string problem = check_wedderburn(w);
    c.expect(problem.empty(), l.name + ": " + problem);
    Eigen::Index size = 0, dim = 0, comm = 0;
    for (int i = 0; i < w.num_blocks(); ++i) {
      const Block& b = w.blocks[static_cast<std::size_t>(i)];
      size += b.dim * b.mult;
      dim += b.dim * b.dim;
      comm += b.mult * b.mult;
      c.expect(is_irreducible(w, i), l.name + ": block " + std::to_string(i + 1) +
                                         " reducible");
    }
    c.expect(size == l.system.ambient, l.name + ": block sizes do not fill the ambient");
    c.expect(dim == a.space.dim(), l.name + ": block dims do not match dim C*(E)");
    c.expect(commutant(a).dim() == comm, l.name + ": commutant dim differs");
    for (std::uint64_t seed : {2u, 3u, 4u})
      c.expect(block_multiset(wedderburn_decompose(a, seed)) == block_multiset(w),
               l.name + ": seed " + std::to_string(seed) + " changes the blocks");
  }

  std::mt19937_64 rng(derive_seed(8, 1));
  int bad_gs = 0, bad_kron = 0, bad_eig = 0;
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = 2 + t % 3;
    const int k = 1 + t % 4;
    std::vector<Mat> mats;
    for (int i = 0; i < k; ++i) mats.push_back(random_complex(n, n, rng));
    mats.push_back(mats[0] - 3.0 * mats.back());
    const MatSubspace s = span_of(mats, n);
    bool ok = s.dim() == k;
    for (std::size_t i = 0; ok && i < s.basis().size(); ++i)
      for (std::size_t j = 0; j < s.basis().size(); ++j)
        ok = ok && std::abs(hs_inner(s.basis()[i], s.basis()[j]) - (i == j ? 1.0 : 0.0)) < 1e-10;
    for (const Mat& m : mats) ok = ok && subspace_contains(s, m);
    bad_gs += !ok;
  }
  for (int t = 0; t < 1000; ++t) {
    Mat a = random_complex(1 + t % 3, 1 + t % 3, rng);
    Mat b = random_complex(1 + t % 4, 1 + t % 4, rng);
    const double lhs = op_norm(kron(a, b));
    bad_kron += std::abs(lhs - op_norm(a) * op_norm(b)) > 1e-9 * lhs;
  }
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = 1 + t % 6;
    Mat h = random_hermitian(n, rng);
    HermEig e = herm_eig(h);
    const double res = (h * e.vectors - e.vectors * e.values.asDiagonal()).norm();
    const double orth = (e.vectors.adjoint() * e.vectors - Mat::Identity(n, n)).norm();
    bool sorted = true;
    for (Eigen::Index i = 0; i + 1 < n; ++i) sorted = sorted && e.values(i) <= e.values(i + 1);
    bad_eig += !(sorted && res <= 1e-10 * std::max(1.0, h.norm()) && orth < 1e-10);
  }
  c.expect(bad_gs == 0, std::to_string(bad_gs) + " Gram-Schmidt failures");
  c.expect(bad_kron == 0, std::to_string(bad_kron) + " kron norm failures");
  c.expect(bad_eig == 0, std::to_string(bad_eig) + " eigensolver failures");
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) out[e.path().filename().string()] = read_file(e.path());
  return out;
}

void determinism(Criterion& c, const fs::path& corpus, const fs::path& work) {
  std::map<std::string, std::string> runs[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path out = work / ("verify_all_" + std::to_string(k + 1));
    fs::remove_all(out);
    CommandOptions opt;
    opt.quiet = true;
    opt.out_dir = out;
    std::ostringstream sout, serr;
    const int rc = cmd_verify_all(corpus, opt, sout, serr);
    c.expect(rc == kOk, "run " + std::to_string(k + 1) + " exit " + std::to_string(rc) +
                            ": " + serr.str());
    runs[k] = read_tree(out);
  }
  c.expect(!runs[0].empty(), "no reports written");
  c.expect(runs[0].size() == runs[1].size(), "report sets differ");
  for (const auto& [name, bytes] : runs[0]) {
    auto it = runs[1].find(name);
    c.expect(it != runs[1].end() && it->second == bytes, name + " differs");
  }
  std::cout << "  [determinism: " << runs[0].size() << " files compared]\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: cenv_acceptance <corpus-dir> <work-dir>\n";
    return 1;
  }
  const fs::path corpus_dir = argv[1], work = argv[2];
  fs::create_directories(work);

  PipelineOptions opt;
  std::vector<Loaded> corpus;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<PairRun> runs;
  bool pairs_ok = true;
  std::string pairs_error;

  std::vector<Criterion> all;
  auto run = [&](const std::string& name, const std::function<void(Criterion&)>& body) {
    Criterion c{name, {}};
    const auto t0 = Clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    std::cout << (c.notes.empty() ? "PASS " : "FAIL ") << name << " ("
              << seconds_since(t0) << " s)\n";
    for (const std::string& n : c.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
    all.push_back(std::move(c));
  };

  try {
    corpus = load_corpus(corpus_dir);
    pairs = load_pairs(corpus_dir);
    runs = run_pairs(corpus, pairs, opt);
  } catch (const std::exception& e) {
    pairs_ok = false;
    pairs_error = e.what();
  }
  auto need_pairs = [&](Criterion& c) {
    if (!pairs_ok) c.fail("pair corpus: " + pairs_error);
    return pairs_ok;
  };

  run("1 main theorem on M2, E_X, E_C pairs", [&](Criterion& c) { main_theorem(c, opt); });
  run("2 route agreement on the corpus, 3 seeds", [&](Criterion& c) {
    if (need_pairs(c)) route_agreement(c, corpus, opt);
  });
  run("3 propagation of tensor products is the max", [&](Criterion& c) {
    if (need_pairs(c)) prop_max(c, runs, opt);
  });
  run("4 power tensor identity", [&](Criterion& c) {
    if (need_pairs(c)) power_tensor(c, runs);
  });
  run("5 Lazar intersection and seminorm", [&](Criterion& c) { lazar(c); });
  run("6 Hopenwasser on the pair corpus", [&](Criterion& c) {
    if (need_pairs(c)) hopenwasser(c, runs);
  });
  run("7 falsifier calibration on E_C", [&](Criterion& c) { falsifier(c); });
  run("8 structural invariants", [&](Criterion& c) {
    if (need_pairs(c)) structural(c, corpus);
  });
  run("9 verify-all determinism", [&](Criterion& c) { determinism(c, corpus_dir, work); });

  int failed = 0;
  for (const Criterion& c : all) failed += !c.notes.empty();
  std::cout << (all.size() - failed) << "/" << all.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
