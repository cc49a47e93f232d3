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

#include "cenv/tensor.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cenv/errors.hpp"

namespace cenv {

MatSubspace kron_span(const MatSubspace& s, const MatSubspace& t,
                      const Tolerances& tol) {
  std::vector<Mat> mats;
  mats.reserve(static_cast<std::size_t>(s.dim() * t.dim()));
  for (const Mat& a : s.basis())
    for (const Mat& b : t.basis()) mats.push_back(kron(a, b));
  return span_of(mats, s.ambient() * t.ambient(), tol);
}

TensorSystem min_tensor(const OperatorSystem& e, const OperatorSystem& f,
                        const Tolerances& tol) {
  TensorSystem t;
  t.left = e;
  t.right = f;
  t.product.ambient = e.ambient * f.ambient;
  t.product.space = kron_span(e.space, f.space, tol);
  t.product.label = e.label + " (x) " + f.label;
  return t;
}

CStarAlgebra min_tensor(const CStarAlgebra& a, const CStarAlgebra& b,
                        const Tolerances& tol) {
  CStarAlgebra out;
  out.ambient = a.ambient * b.ambient;
  out.space = kron_span(a.space, b.space, tol);
  out.unital = a.unital && b.unital;
  const Mat ia = Mat::Identity(a.ambient, a.ambient);
  const Mat ib = Mat::Identity(b.ambient, b.ambient);
  for (const Mat& g : a.generators) out.generators.push_back(kron(g, ib));
  for (const Mat& h : b.generators) out.generators.push_back(kron(ia, h));
  return out;
}

WedderburnData product_blocks(const WedderburnData& wa,
                              const WedderburnData& wb,
                              const Tolerances& tol) {
  WedderburnData w;
  w.algebra = min_tensor(wa.algebra, wb.algebra, tol);
  for (int i = 0; i < wa.num_blocks(); ++i)
    for (int j = 0; j < wb.num_blocks(); ++j) {
      const Block& bi = wa.blocks[static_cast<std::size_t>(i)];
      const Block& bj = wb.blocks[static_cast<std::size_t>(j)];
      Block b;
      b.dim = bi.dim * bj.dim;
      b.mult = bi.mult * bj.mult;
      b.label = {i, j};
      for (const Mat& ci : bi.copies)
        for (const Mat& cj : bj.copies) b.copies.push_back(kron(ci, cj));
      w.blocks.push_back(std::move(b));
    }
  w.u = assemble_unitary(w.blocks, w.algebra.ambient);
  return w;
}

std::string compare_decompositions(const WedderburnData& product,
                                   const WedderburnData& direct,
                                   const Tolerances& tol) {
  std::ostringstream msg;
  if (!subspace_equal(product.algebra.space, direct.algebra.space, tol)) {
    msg << "algebras differ: dim " << product.algebra.space.dim() << " vs "
        << direct.algebra.space.dim();
    return msg.str();
  }
  if (product.num_blocks() != direct.num_blocks()) {
    msg << "block counts differ: " << product.num_blocks() << " vs "
        << direct.num_blocks();
    return msg.str();
  }
  std::vector<bool> used(static_cast<std::size_t>(direct.num_blocks()), false);
  for (int p = 0; p < product.num_blocks(); ++p) {
    const Block& bp = product.blocks[static_cast<std::size_t>(p)];
    bool found = false;
    for (int q = 0; q < direct.num_blocks() && !found; ++q) {
      const Block& bq = direct.blocks[static_cast<std::size_t>(q)];
      if (used[static_cast<std::size_t>(q)] || bq.dim != bp.dim || bq.mult != bp.mult)
        continue;
      if (intertwiner_dim(product, p, direct, q, tol) == 1) {
        used[static_cast<std::size_t>(q)] = true;
        found = true;
      }
    }
    if (!found) {
      msg << "product block (" << bp.label.at(0) + 1 << "," << bp.label.at(1) + 1
          << ") of size " << bp.dim << " has no equivalent direct block";
      return msg.str();
    }
  }
  return {};
}

BlockSet kernel_of_tensor_quotients(const BlockSet& i, int left_blocks,
                                    const BlockSet& j, int right_blocks) {
  BlockSet out;
  for (int a = 0; a < left_blocks; ++a)
    for (int b = 0; b < right_blocks; ++b) {
      const bool ka = std::find(i.begin(), i.end(), a) != i.end();
      const bool kb = std::find(j.begin(), j.end(), b) != j.end();
      if (ka || kb) out.push_back(pair_index(a, b, right_blocks));
    }
  return out;
}

MatSubspace tensor_quotient_kernel(const WedderburnData& wa, const BlockSet& i,
                                   const WedderburnData& wb, const BlockSet& j,
                                   const Tolerances& tol) {
  QuotientMap qa = quotient_map(wa, i);
  QuotientMap qb = quotient_map(wb, j);
  const auto& ba = wa.algebra.space.basis();
  const auto& bb = wb.algebra.space.basis();
  const Eigen::Index n = wa.algebra.ambient * wb.algebra.ambient;
  std::vector<Mat> domain;
  for (const Mat& a : ba)
    for (const Mat& b : bb) domain.push_back(kron(a, b));
  const Eigen::Index dt = qa.target_dim * qb.target_dim;
  if (dt == 0) return span_of(domain, n, tol);
  std::vector<Mat> ia, ib;
  for (const Mat& a : ba) ia.push_back(qa(a));
  for (const Mat& b : bb) ib.push_back(qb(b));
  Mat stacked(dt * dt, static_cast<Eigen::Index>(domain.size()));
  Eigen::Index col = 0;
  for (const Mat& a : ia)
    for (const Mat& b : ib) stacked.col(col++) = vec(kron(a, b));
  Mat coeffs = null_space(stacked, tol.rank);
  std::vector<Mat> mats;
  for (Eigen::Index c = 0; c < coeffs.cols(); ++c) {
    Mat m = Mat::Zero(n, n);
    for (std::size_t k = 0; k < domain.size(); ++k)
      m += coeffs(static_cast<Eigen::Index>(k), c) * domain[k];
    mats.push_back(std::move(m));
  }
  return span_of(mats, n, tol);
}

FactorAnalysis analyze_factor(const OperatorSystem& e, const TensorOptions& opt,
                              int jobs) {
  FactorAnalysis f;
  f.system = e;
  const Tolerances& tol = opt.boundary.tol;
  f.wedderburn = wedderburn_decompose(generated_cstar(e, tol), opt.boundary.seed, tol);
  f.dk = silov_ideal_dk(e, f.wedderburn, opt.boundary, jobs);
  f.lattice = silov_ideal_lattice(e, f.wedderburn, opt.boundary, jobs);
  if (f.dk.killed != f.lattice.killed)
    throw VerificationError("Silov routes disagree on " +
                            (e.label.empty() ? std::string("factor") : e.label));
  return f;
}

namespace {

std::vector<Eigen::Index> kept_dims(const WedderburnData& w, const BlockSet& killed) {
  std::vector<Eigen::Index> out;
  for (int k : complement(killed, w.num_blocks()))
    out.push_back(w.blocks[static_cast<std::size_t>(k)].dim);
  std::sort(out.begin(), out.end());
  return out;
}

std::string pair_set_str(const BlockSet& s, int right_blocks) {
  std::ostringstream o;
  o << "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto [i, j] = pair_of(s[k], right_blocks);
    o << (k ? "," : "") << "(" << i + 1 << "," << j + 1 << ")";
  }
  o << "}";
  return o.str();
}

}  // namespace

MainTheoremReport verify_main_theorem(const FactorAnalysis& e,
                                      const FactorAnalysis& f,
                                      const TensorOptions& opt,
                                      TensorSystem* system,
                                      WedderburnData* product, int jobs) {
  const Tolerances& tol = opt.boundary.tol;
  const Eigen::Index nm = e.system.ambient * f.system.ambient;
  if (nm > opt.max_ambient_product) {
    std::ostringstream msg;
    msg << "product ambient " << nm << " exceeds the cap of "
        << opt.max_ambient_product;
    throw InputError(msg.str());
  }
  MainTheoremReport r;
  r.silov_left = e.dk.killed;
  r.silov_right = f.dk.killed;
  const int na = e.wedderburn.num_blocks();
  const int nb = f.wedderburn.num_blocks();

  TensorSystem t = min_tensor(e.system, f.system, tol);
  WedderburnData w = product_blocks(e.wedderburn, f.wedderburn, tol);
  {
    WedderburnData direct = wedderburn_decompose(
        generated_cstar(t.product, tol), derive_seed(opt.boundary.seed, 0x7E50), tol);
    r.product_blocks_detail = compare_decompositions(w, direct, tol);
    r.product_blocks_ok = r.product_blocks_detail.empty();
    if (!r.product_blocks_ok)
      throw VerificationError("product decomposition disagrees with the direct one: " +
                              r.product_blocks_detail);
  }

  r.product_dk = silov_ideal_dk(t.product, w, opt.boundary, jobs);
  r.product_lattice = silov_ideal_lattice(t.product, w, opt.boundary, jobs);
  r.routes_agree = r.product_dk.killed == r.product_lattice.killed;

  r.kernel = kernel_of_tensor_quotients(r.silov_left, na, r.silov_right, nb);
  MatSubspace ker_sub = ideal_subspace(w, r.kernel, tol);
  r.kernel_subspace_ok = subspace_equal(
      ker_sub,
      tensor_quotient_kernel(e.wedderburn, r.silov_left, f.wedderburn, r.silov_right, tol),
      tol);

  r.inclusion_ok = true;
  const MatSubspace silov_sub = ideal_subspace(w, r.product_dk.killed, tol);
  for (const Mat& m : silov_sub.basis())
    if (!subspace_contains(ker_sub, m, tol)) r.inclusion_ok = false;

  LinearMap q = restricted_quotient(t.product, w, r.kernel);
  r.counterexample = falsify_complete_isometry(
      q, opt.falsifier_trials, derive_seed(opt.boundary.seed, 0xC034), tol);
  r.boundary_ideal_ok = !r.counterexample.has_value();

  r.killed_equal = r.product_dk.killed == r.kernel;

  r.envelope_dims = kept_dims(w, r.product_dk.killed);
  for (int i : complement(r.silov_left, na))
    for (int j : complement(r.silov_right, nb))
      r.expected_envelope_dims.push_back(
          e.wedderburn.blocks[static_cast<std::size_t>(i)].dim *
          f.wedderburn.blocks[static_cast<std::size_t>(j)].dim);
  std::sort(r.expected_envelope_dims.begin(), r.expected_envelope_dims.end());
  r.envelope_ok = r.envelope_dims == r.expected_envelope_dims;

  r.pass = r.product_blocks_ok && r.routes_agree && r.kernel_subspace_ok &&
           r.inclusion_ok && r.boundary_ideal_ok && r.killed_equal && r.envelope_ok;
  if (!r.pass) {
    std::ostringstream msg;
    if (!r.routes_agree)
      msg << "product routes disagree: " << pair_set_str(r.product_dk.killed, nb)
          << " vs " << pair_set_str(r.product_lattice.killed, nb) << "; ";
    if (!r.kernel_subspace_ok) msg << "kernel subspace cross-check failed; ";
    if (!r.inclusion_ok) msg << "Silov ideal not inside the tensor kernel; ";
    if (!r.boundary_ideal_ok)
      msg << "tensor kernel is not a boundary ideal (gap " << r.counterexample->gap
          << " at level " << r.counterexample->level << "); ";
    if (!r.killed_equal)
      msg << "Silov ideal " << pair_set_str(r.product_dk.killed, nb)
          << " differs from tensor kernel " << pair_set_str(r.kernel, nb) << "; ";
    if (!r.envelope_ok) msg << "envelope block sizes differ; ";
    r.failure = msg.str();
    if (!r.failure.empty()) r.failure.resize(r.failure.size() - 2);
  }
  if (system) *system = std::move(t);
  if (product) *product = std::move(w);
  return r;
}

HopenwasserReport verify_hopenwasser(const FactorAnalysis& e,
                                     const FactorAnalysis& f,
                                     const TensorSystem& t,
                                     const WedderburnData& product,
                                     const TensorOptions& opt,
                                     const std::vector<UniquenessResult>* known) {
  HopenwasserReport r;
  r.pass = true;
  const int nb = f.wedderburn.num_blocks();
  for (int i : e.dk.boundary_reps)
    for (int j : f.dk.boundary_reps) {
      const int k = pair_index(i, j, nb);
      bool unique;
      if (known) {
        unique = known->at(static_cast<std::size_t>(k)).unique;
      } else {
        UcpSpectrahedron s = ucp_extension_set(t.product, product, k, opt.boundary.tol);
        unique = is_unique_ucp_extension(
                     s, derive_seed(opt.boundary.seed, 0xB0, static_cast<std::uint64_t>(k)),
                     opt.boundary.uniqueness_trials, opt.boundary.tol,
                     opt.boundary.iteration_cap)
                     .unique;
      }
      r.pairs.push_back({{i, j}, unique});
      if (!unique) r.pass = false;
    }
  return r;
}

namespace {

BlockSet intersect_all(const std::vector<BlockSet>& fam) {
  BlockSet out = fam.front();
  for (const BlockSet& s : fam) out = set_intersection(out, s);
  return out;
}

BlockSet normalized(BlockSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

LazarReport verify_lazar(int left_blocks, int right_blocks,
                         const std::vector<BlockSet>& k_family,
                         const std::vector<BlockSet>& l_family) {
  if (k_family.empty() || l_family.empty())
    throw std::invalid_argument("verify_lazar: families must be nonempty");
  std::vector<BlockSet> ks, ls;
  for (const auto& k : k_family) ks.push_back(normalized(k));
  for (const auto& l : l_family) ls.push_back(normalized(l));
  LazarReport r;
  r.i = intersect_all(ks);
  r.j = intersect_all(ls);
  r.lhs = kernel_of_tensor_quotients(r.i, left_blocks, r.j, right_blocks);
  bool first = true;
  for (const auto& k : ks)
    for (const auto& l : ls) {
      BlockSet kl = kernel_of_tensor_quotients(k, left_blocks, l, right_blocks);
      r.rhs = first ? kl : set_intersection(r.rhs, kl);
      first = false;
    }
  r.pass = r.lhs == r.rhs;
  return r;
}

namespace {

// Row offsets of the kept blocks of `w` inside the quotient by `base`.
std::vector<Eigen::Index> kept_rows(const WedderburnData& w, const BlockSet& base,
                                    const BlockSet& killed) {
  std::vector<Eigen::Index> rows;
  Eigen::Index at = 0;
  for (int b : complement(base, w.num_blocks())) {
    const Eigen::Index d = w.blocks[static_cast<std::size_t>(b)].dim;
    if (std::find(killed.begin(), killed.end(), b) == killed.end())
      for (Eigen::Index k = 0; k < d; ++k) rows.push_back(at + k);
    at += d;
  }
  return rows;
}

}  // namespace

double lazar_seminorm(const WedderburnData& wa, const WedderburnData& wb,
                      const BlockSet& i, const BlockSet& j,
                      const std::vector<BlockSet>& k_family,
                      const std::vector<BlockSet>& l_family, const Mat& x) {
  if (k_family.empty() || l_family.empty())
    throw std::invalid_argument("lazar_seminorm: families must be nonempty");
  std::vector<BlockSet> ks, ls;
  for (const auto& k : k_family) ks.push_back(normalized(k));
  for (const auto& l : l_family) ls.push_back(normalized(l));
  if (intersect_all(ks) != normalized(i) || intersect_all(ls) != normalized(j))
    throw std::invalid_argument("lazar_seminorm: families do not intersect to I and J");
  const Eigen::Index db = quotient_map(wb, j).target_dim;
  const Eigen::Index da = quotient_map(wa, i).target_dim;
  if (x.rows() != da * db || x.cols() != da * db)
    throw std::invalid_argument("lazar_seminorm: element has the wrong shape");
  double sup = 0.0;
  for (const auto& k : ks)
    for (const auto& l : ls) {
      std::vector<Eigen::Index> ra = kept_rows(wa, i, k);
      std::vector<Eigen::Index> rb = kept_rows(wb, j, l);
      std::vector<Eigen::Index> idx;
      for (Eigen::Index a : ra)
        for (Eigen::Index b : rb) idx.push_back(a * db + b);
      if (idx.empty()) continue;
      const Eigen::Index s = static_cast<Eigen::Index>(idx.size());
      Mat c(s, s);
      for (Eigen::Index r = 0; r < s; ++r)
        for (Eigen::Index q = 0; q < s; ++q)
          c(r, q) = x(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(q)]);
      sup = std::max(sup, op_norm(c));
    }
  return sup;
}

ProperTensorCheck check_proper_tensor(const MatSubspace& s, const MatSubspace& a,
                                      const MatSubspace& b, const Tolerances& tol) {
  ProperTensorCheck c;
  c.span_dim = kron_span(s, b, tol).dim();
  c.product_dim = s.dim() * b.dim();
  c.ambient_dim = a.dim() * b.dim();
  c.pass = c.span_dim == c.product_dim &&
           (s.dim() < a.dim() ? c.span_dim < c.ambient_dim : c.span_dim == c.ambient_dim);
  return c;
}

}  // namespace cenv
