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

#include "cenv/boundary.hpp"

#include <sstream>

#include "cenv/errors.hpp"
#include "cenv/parallel.hpp"

namespace cenv {

namespace {

Mat hermitize(const Mat& a) { return (a + a.adjoint()) / 2.0; }

std::vector<Mat> hermitian_constraints(const OperatorSystem& e,
                                       const WedderburnData& w,
                                       const Tolerances& tol) {
  MatSubspace h = hermitian_basis(e.space, tol);
  for (const Mat& b : h.basis())
    if (!subspace_contains(w.algebra.space, b, tol))
      throw VerificationError("operator system is not contained in the algebra");
  return h.basis();
}

std::string set_str(const BlockSet& s) {
  std::ostringstream o;
  o << "{";
  for (std::size_t i = 0; i < s.size(); ++i) o << (i ? "," : "") << s[i] + 1;
  o << "}";
  return o.str();
}

}  // namespace

UcpSpectrahedron ucp_extension_set(const OperatorSystem& e,
                                   const WedderburnData& w, int i,
                                   const Tolerances& tol) {
  if (i < 0 || i >= w.num_blocks())
    throw std::invalid_argument("ucp_extension_set: block index out of range");
  std::vector<Mat> hs = hermitian_constraints(e, w, tol);
  std::vector<Eigen::Index> dims;
  for (const Block& b : w.blocks) dims.push_back(b.dim);
  std::vector<std::vector<Mat>> elems;
  std::vector<Mat> targets;
  for (const Mat& h : hs) {
    std::vector<Mat> xs;
    for (int b = 0; b < w.num_blocks(); ++b) xs.push_back(hermitize(w.irrep(b, h)));
    targets.push_back(xs[static_cast<std::size_t>(i)]);
    elems.push_back(std::move(xs));
  }
  const Eigen::Index d = w.blocks[static_cast<std::size_t>(i)].dim;
  UcpSpectrahedron s(dims, d, std::move(elems), std::move(targets), tol);
  ChoiTuple j0 = s.zero();
  j0[static_cast<std::size_t>(i)] = identity_choi(d);
  s.basepoint = std::move(j0);
  return s;
}

UcpSpectrahedron left_inverse_set(const OperatorSystem& e,
                                  const WedderburnData& w,
                                  const BlockSet& killed,
                                  const Tolerances& tol) {
  QuotientMap q = quotient_map(w, killed);
  std::vector<Mat> hs = hermitian_constraints(e, w, tol);
  std::vector<Eigen::Index> dims;
  for (int b : q.kept) dims.push_back(w.blocks[static_cast<std::size_t>(b)].dim);
  std::vector<std::vector<Mat>> elems;
  std::vector<Mat> targets;
  for (const Mat& h : hs) {
    std::vector<Mat> xs;
    for (int b : q.kept) xs.push_back(hermitize(w.irrep(b, h)));
    elems.push_back(std::move(xs));
    targets.push_back(hermitize(h));
  }
  return UcpSpectrahedron(dims, e.ambient, std::move(elems), std::move(targets), tol);
}

std::vector<UniquenessResult> block_uniqueness(const OperatorSystem& e,
                                               const WedderburnData& w,
                                               const BoundaryOptions& opt,
                                               int jobs) {
  std::vector<UniquenessResult> out(static_cast<std::size_t>(w.num_blocks()));
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    UcpSpectrahedron s = ucp_extension_set(e, w, static_cast<int>(i), opt.tol);
    out[i] = is_unique_ucp_extension(s, derive_seed(opt.seed, 0xB0, i),
                                     opt.uniqueness_trials, opt.tol,
                                     opt.iteration_cap);
  });
  return out;
}

BlockSet boundary_representations(const OperatorSystem& e,
                                  const WedderburnData& w,
                                  const BoundaryOptions& opt) {
  return silov_ideal_dk(e, w, opt).boundary_reps;
}

SilovResult silov_from_uniqueness(std::vector<UniquenessResult> uniq) {
  SilovResult r;
  r.route = "kernel-intersection";
  for (std::size_t i = 0; i < uniq.size(); ++i)
    if (uniq[i].unique) r.boundary_reps.push_back(static_cast<int>(i));
  if (r.boundary_reps.empty())
    throw VerificationError("no boundary representations found");
  r.killed = complement(r.boundary_reps, static_cast<int>(uniq.size()));
  r.uniqueness = std::move(uniq);
  return r;
}

SilovResult silov_ideal_dk(const OperatorSystem& e, const WedderburnData& w,
                           const BoundaryOptions& opt, int jobs) {
  return silov_from_uniqueness(block_uniqueness(e, w, opt, jobs));
}

FeasibilityResult is_boundary_ideal_ucp(const OperatorSystem& e,
                                        const WedderburnData& w,
                                        const BlockSet& killed,
                                        const BoundaryOptions& opt) {
  QuotientMap q = quotient_map(w, killed);
  if (q.kept.empty()) {
    FeasibilityResult r;
    r.method = "empty";
    return r;
  }
  UcpSpectrahedron s = left_inverse_set(e, w, killed, opt.tol);
  if (q.killed.empty()) {
    // The inverse of the faithful quotient: x -> sum over copies B x B^*.
    const Eigen::Index n = e.ambient;
    ChoiTuple j;
    for (const Block& b : w.blocks) {
      Mat jb = Mat::Zero(b.dim * n, b.dim * n);
      for (const Mat& c : b.copies) {
        CVec om(b.dim * n);
        for (Eigen::Index k = 0; k < b.dim; ++k)
          for (Eigen::Index p = 0; p < n; ++p) om(k * n + p) = c(p, k);
        jb += om * om.adjoint();
      }
      j.push_back(std::move(jb));
    }
    if (s.constraint_residual(j) > 1e-7 * std::max(1.0, tuple_norm(j)))
      throw VerificationError("faithful quotient inverse fails its constraints");
    FeasibilityResult r;
    r.feasible = true;
    r.method = "exact";
    r.point = std::move(j);
    return r;
  }
  return find_feasible_point(s, static_cast<double>(e.ambient), opt.tol,
                             opt.iteration_cap);
}

std::vector<BlockSet> maximal_passing(const std::vector<IdealCertificate>& ideals) {
  std::vector<BlockSet> out;
  for (const auto& a : ideals) {
    if (!a.result.feasible) continue;
    bool maximal = true;
    for (const auto& b : ideals)
      if (b.result.feasible && b.killed != a.killed && is_subset(a.killed, b.killed))
        maximal = false;
    if (maximal) out.push_back(a.killed);
  }
  return out;
}

SilovResult silov_ideal_lattice(const OperatorSystem& e,
                                const WedderburnData& w,
                                const BoundaryOptions& opt, int jobs) {
  if (w.num_blocks() > opt.lattice_cap) {
    std::ostringstream msg;
    msg << "lattice search over " << w.num_blocks()
        << " blocks exceeds the cap of " << opt.lattice_cap;
    throw InputError(msg.str());
  }
  SilovResult r;
  r.route = "lattice-search";
  std::vector<BlockSet> sets = enumerate_ideals(w.num_blocks());
  r.ideals.resize(sets.size());
  parallel_for(sets.size(), jobs, [&](std::size_t k) {
    r.ideals[k].killed = sets[k];
    r.ideals[k].result = is_boundary_ideal_ucp(e, w, sets[k], opt);
  });
  std::vector<BlockSet> maxima = maximal_passing(r.ideals);
  if (maxima.size() != 1) {
    std::ostringstream msg;
    msg << "boundary ideals have " << maxima.size() << " maximal elements:";
    for (const auto& m : maxima) msg << " " << set_str(m);
    throw VerificationError(msg.str());
  }
  r.killed = maxima.front();
  r.boundary_reps = complement(r.killed, w.num_blocks());
  return r;
}

LinearMap restricted_quotient(const OperatorSystem& e, const WedderburnData& w,
                              const BlockSet& killed) {
  QuotientMap q = quotient_map(w, killed);
  return make_linear_map(e.space, [&](const Mat& a) { return q(a); }, q.target_dim);
}

Envelope quotient_envelope(const OperatorSystem& e, const WedderburnData& w,
                           const BlockSet& killed, const Tolerances& tol) {
  QuotientMap q = quotient_map(w, killed);
  const Eigen::Index dd = q.target_dim;
  Envelope env;
  env.killed = q.killed;
  env.embed = restricted_quotient(e, w, killed);
  CStarAlgebra alg;
  alg.ambient = dd;
  std::vector<Mat> imgs;
  for (const Mat& b : w.algebra.space.basis()) imgs.push_back(q(b));
  alg.space = span_of(imgs, dd, tol);
  alg.unital = true;
  alg.generators = env.embed.images;
  env.image = span_of(env.embed.images, dd, tol);
  env.algebra.algebra = std::move(alg);
  Eigen::Index at = 0;
  for (int i : q.kept) {
    const Block& src = w.blocks[static_cast<std::size_t>(i)];
    Block b;
    b.dim = src.dim;
    b.mult = 1;
    b.label = src.label;
    Mat c = Mat::Zero(dd, src.dim);
    c.block(at, 0, src.dim, src.dim) = Mat::Identity(src.dim, src.dim);
    b.copies.push_back(std::move(c));
    at += src.dim;
    env.algebra.blocks.push_back(std::move(b));
  }
  env.algebra.u = Mat::Identity(dd, dd);
  return env;
}

Envelope cstar_envelope(const OperatorSystem& e, const BoundaryOptions& opt) {
  CStarAlgebra a = generated_cstar(e, opt.tol);
  WedderburnData w = wedderburn_decompose(a, opt.seed, opt.tol);
  SilovResult s = silov_ideal_dk(e, w, opt);
  return quotient_envelope(e, w, s.killed, opt.tol);
}

}  // namespace cenv
