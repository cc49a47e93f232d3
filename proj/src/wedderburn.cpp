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

#include "cenv/wedderburn.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "cenv/errors.hpp"

namespace cenv {

namespace {

constexpr double kClusterGap = 1e-6;

// Linear map x -> x g - g x on column-major vec(x).
Mat commutator_operator(const Mat& g) {
  const Eigen::Index n = g.rows();
  Mat id = Mat::Identity(n, n);
  return kron(g.transpose(), id) - kron(id, g);
}

MatSubspace subspace_from_columns(const Mat& cols, Eigen::Index n,
                                  const Tolerances& tol) {
  std::vector<Mat> mats;
  for (Eigen::Index j = 0; j < cols.cols(); ++j)
    mats.push_back(unvec(cols.col(j), n));
  return span_of(mats, n, tol);
}

// Ranges [start, start+count) of eigenvalues closer than the relative gap.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const RVec& vals) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  if (vals.size() == 0) return out;
  const double scale = std::max(1e-300, vals.cwiseAbs().maxCoeff());
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= vals.size(); ++i) {
    if (i == vals.size() || vals(i) - vals(i - 1) > kClusterGap * scale) {
      out.emplace_back(start, i - start);
      start = i;
    }
  }
  return out;
}

Mat random_element(const MatSubspace& s, std::mt19937_64& rng) {
  CVec c = random_complex(s.dim(), 1, rng).col(0);
  return s.from_coordinates(c);
}

Mat random_hermitian_element(const MatSubspace& s, std::mt19937_64& rng) {
  Mat x = random_element(s, rng);
  return (x + x.adjoint()) / 2.0;
}

bool fingerprint_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    const double t = 1e-6 * (1.0 + std::abs(a[k]) + std::abs(b[k]));
    if (std::abs(a[k].real() - b[k].real()) > t)
      return a[k].real() < b[k].real();
    if (std::abs(a[k].imag() - b[k].imag()) > t)
      return a[k].imag() < b[k].imag();
  }
  return false;
}

std::optional<std::vector<Block>> attempt(const CStarAlgebra& a,
                                          const MatSubspace& zspace,
                                          std::mt19937_64& rng,
                                          const Tolerances& tol) {
  const Eigen::Index n = a.ambient;
  MatSubspace zh = hermitian_basis(zspace, tol);
  Mat z = Mat::Zero(n, n);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const Mat& h : zh.basis()) z += g(rng) * h;
  HermEig ze = herm_eig((z + z.adjoint()) / 2.0, tol);
  auto iso = clusters(ze.values);
  if (static_cast<Eigen::Index>(iso.size()) != zspace.dim()) return std::nullopt;

  Mat ah = random_hermitian_element(a.space, rng);
  Mat b = random_element(a.space, rng);
  std::vector<Block> blocks;
  Eigen::Index total_sq = 0;
  for (auto [start, r] : iso) {
    Mat v = ze.vectors.middleCols(start, r);
    Mat ai = v.adjoint() * ah * v;
    HermEig ae = herm_eig((ai + ai.adjoint()) / 2.0, tol);
    auto cl = clusters(ae.values);
    const Eigen::Index d = static_cast<Eigen::Index>(cl.size());
    const Eigen::Index m = cl.front().second;
    for (auto [s, c] : cl)
      if (c != m) return std::nullopt;
    if (d * m != r) return std::nullopt;
    Mat bi = v.adjoint() * b * v;
    const double bnorm = std::max(1e-300, bi.norm());
    Block blk;
    blk.dim = d;
    blk.mult = m;
    for (Eigen::Index k = 0; k < m; ++k) {
      CVec vk = ae.vectors.col(cl[0].first + k);
      Mat w(r, d);
      w.col(0) = vk;
      for (Eigen::Index j = 1; j < d; ++j) {
        Mat sj = ae.vectors.middleCols(cl[j].first, m);
        CVec x = sj * (sj.adjoint() * (bi * vk));
        const double nx = x.norm();
        if (nx < 1e-6 * bnorm) return std::nullopt;
        w.col(j) = x / nx;
      }
      blk.copies.push_back(v * w);
    }
    total_sq += d * d;
    blocks.push_back(std::move(blk));
  }
  if (total_sq != a.space.dim()) return std::nullopt;
  return blocks;
}

void order_blocks(std::vector<Block>& blocks, const CStarAlgebra& a) {
  std::vector<std::vector<cplx>> fp(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Mat& c = blocks[i].copies.front();
    for (const Mat& g : a.generators) fp[i].push_back((c.adjoint() * g * c).trace());
  }
  std::vector<std::size_t> idx(blocks.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    if (blocks[x].dim != blocks[y].dim) return blocks[x].dim > blocks[y].dim;
    if (fingerprint_less(fp[x], fp[y])) return true;
    if (fingerprint_less(fp[y], fp[x])) return false;
    return blocks[x].mult > blocks[y].mult;
  });
  std::vector<Block> out;
  for (std::size_t i : idx) out.push_back(std::move(blocks[i]));
  blocks = std::move(out);
}

}  // namespace

Mat WedderburnData::irrep(int i, const Mat& a) const {
  const Mat& c = blocks.at(static_cast<std::size_t>(i)).copies.front();
  return c.adjoint() * a * c;
}

std::vector<Mat> WedderburnData::irrep_on_basis(int i) const {
  std::vector<Mat> out;
  for (const Mat& b : algebra.space.basis()) out.push_back(irrep(i, b));
  return out;
}

MatSubspace commutant(const CStarAlgebra& a, const Tolerances& tol) {
  const Eigen::Index n = a.ambient;
  std::vector<Mat> gens = a.generators;
  if (gens.empty()) gens = a.space.basis();
  if (gens.empty()) return span_of(std::vector<Mat>{}, n, tol);
  Mat stacked(static_cast<Eigen::Index>(gens.size()) * n * n, n * n);
  for (std::size_t k = 0; k < gens.size(); ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) =
        commutator_operator(gens[k]);
  return subspace_from_columns(null_space(stacked, tol.rank), n, tol);
}

MatSubspace center(const CStarAlgebra& a, const Tolerances& tol) {
  const Eigen::Index n = a.ambient;
  const auto& basis = a.space.basis();
  std::vector<Mat> gens = a.generators;
  if (gens.empty()) gens = basis;
  const Eigen::Index dim = a.space.dim();
  Mat stacked(static_cast<Eigen::Index>(gens.size()) * n * n, dim);
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Mat& b = basis[static_cast<std::size_t>(k)];
      stacked.block(static_cast<Eigen::Index>(g) * n * n, k, n * n, 1) =
          vec(b * gens[g] - gens[g] * b);
    }
  Mat coeffs = null_space(stacked, tol.rank);
  std::vector<Mat> mats;
  for (Eigen::Index j = 0; j < coeffs.cols(); ++j)
    mats.push_back(a.space.from_coordinates(coeffs.col(j)));
  return span_of(mats, n, tol);
}

Mat assemble_unitary(const std::vector<Block>& blocks, Eigen::Index n) {
  Mat cols(n, n);
  Eigen::Index at = 0;
  for (const Block& b : blocks)
    for (const Mat& c : b.copies) {
      if (at + c.cols() > n)
        throw VerificationError("block copies exceed the ambient dimension");
      cols.middleCols(at, c.cols()) = c;
      at += c.cols();
    }
  if (at != n) throw VerificationError("block copies do not fill the ambient space");
  return cols.adjoint();
}

std::string check_wedderburn(const WedderburnData& w, const Tolerances& tol) {
  const Eigen::Index n = w.algebra.ambient;
  std::ostringstream msg;
  if ((w.u * w.u.adjoint() - Mat::Identity(n, n)).norm() >
      tol.ortho * static_cast<double>(n) * 100.0) {
    return "u is not unitary";
  }
  Eigen::Index sq = 0;
  for (const Block& b : w.blocks) sq += b.dim * b.dim;
  if (sq != w.algebra.space.dim()) {
    msg << "sum of squared block sizes " << sq << " != algebra dimension "
        << w.algebra.space.dim();
    return msg.str();
  }
  for (const Mat& a : w.algebra.space.basis()) {
    const double scale = std::max(1.0, a.norm());
    for (const Block& b : w.blocks) {
      const Mat pi = b.copies.front().adjoint() * a * b.copies.front();
      for (std::size_t k = 0; k < b.copies.size(); ++k) {
        // Compression to every copy must agree, and a must map the copy into
        // itself.
        const Mat& c = b.copies[k];
        Mat ac = a * c;
        if ((c.adjoint() * ac - pi).norm() > tol.rank * scale)
          return "copies of a block carry different representations";
        if ((ac - c * (c.adjoint() * ac)).norm() > tol.rank * scale)
          return "a copy subspace is not invariant";
      }
    }
  }
  return {};
}

WedderburnData wedderburn_decompose(const CStarAlgebra& a, std::uint64_t seed,
                                    const Tolerances& tol) {
  if (!a.unital) throw VerificationError("algebra is not unital");
  if (auto m = check_cstar_algebra(a, tol); !m.empty())
    throw VerificationError("not a *-algebra: " + m);
  MatSubspace z = center(a, tol);
  std::string last = "no attempt";
  for (int attempt_no = 0; attempt_no < 4; ++attempt_no) {
    std::mt19937_64 rng(derive_seed(seed, 0x57ED, static_cast<std::uint64_t>(attempt_no)));
    auto blocks = attempt(a, z, rng, tol);
    if (!blocks) {
      last = "degenerate random draw";
      continue;
    }
    order_blocks(*blocks, a);
    WedderburnData w;
    w.algebra = a;
    w.blocks = std::move(*blocks);
    w.u = assemble_unitary(w.blocks, a.ambient);
    last = check_wedderburn(w, tol);
    if (last.empty()) return w;
  }
  throw VerificationError("Wedderburn decomposition failed: " + last);
}

std::vector<BlockSet> enumerate_ideals(int num_blocks) {
  if (num_blocks < 0 || num_blocks > 20)
    throw std::invalid_argument("enumerate_ideals: unsupported block count");
  std::vector<BlockSet> out;
  for (std::uint32_t mask = 0; mask < (1u << num_blocks); ++mask) {
    BlockSet s;
    for (int i = 0; i < num_blocks; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const BlockSet& x, const BlockSet& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

BlockSet complement(const BlockSet& s, int num_blocks) {
  BlockSet out;
  for (int i = 0; i < num_blocks; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

bool is_subset(const BlockSet& a, const BlockSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

BlockSet set_union(const BlockSet& a, const BlockSet& b) {
  BlockSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

BlockSet set_intersection(const BlockSet& a, const BlockSet& b) {
  BlockSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

Mat QuotientMap::operator()(const Mat& a) const {
  Mat out = Mat::Zero(target_dim, target_dim);
  Eigen::Index at = 0;
  for (int i : kept) {
    const Eigen::Index d = source->blocks[static_cast<std::size_t>(i)].dim;
    out.block(at, at, d, d) = source->irrep(i, a);
    at += d;
  }
  return out;
}

QuotientMap quotient_map(const WedderburnData& w, const BlockSet& killed) {
  QuotientMap q;
  q.source = &w;
  q.killed = killed;
  std::sort(q.killed.begin(), q.killed.end());
  q.killed.erase(std::unique(q.killed.begin(), q.killed.end()), q.killed.end());
  for (int i : q.killed)
    if (i < 0 || i >= w.num_blocks())
      throw std::invalid_argument("quotient_map: block index out of range");
  q.kept = complement(q.killed, w.num_blocks());
  for (int i : q.kept) q.target_dim += w.blocks[static_cast<std::size_t>(i)].dim;
  return q;
}

MatSubspace ideal_subspace(const WedderburnData& w, const BlockSet& killed,
                           const Tolerances& tol) {
  const auto& basis = w.algebra.space.basis();
  const Eigen::Index dim = w.algebra.space.dim();
  BlockSet kept = complement(killed, w.num_blocks());
  Eigen::Index rows = 0;
  for (int i : kept) rows += w.blocks[static_cast<std::size_t>(i)].dim *
                             w.blocks[static_cast<std::size_t>(i)].dim;
  std::vector<Mat> mats;
  if (rows == 0) {
    mats = basis;
  } else {
    Mat stacked(rows, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      Eigen::Index at = 0;
      for (int i : kept) {
        CVec v = vec(w.irrep(i, basis[static_cast<std::size_t>(k)]));
        stacked.block(at, k, v.size(), 1) = v;
        at += v.size();
      }
    }
    Mat coeffs = null_space(stacked, tol.rank);
    for (Eigen::Index j = 0; j < coeffs.cols(); ++j)
      mats.push_back(w.algebra.space.from_coordinates(coeffs.col(j)));
  }
  return span_of(mats, w.algebra.ambient, tol);
}

Eigen::Index intertwiner_dim(const WedderburnData& w, int i,
                             const WedderburnData& w2, int j,
                             const Tolerances& tol) {
  const Eigen::Index d = w.blocks.at(static_cast<std::size_t>(i)).dim;
  const Eigen::Index d2 = w2.blocks.at(static_cast<std::size_t>(j)).dim;
  std::vector<Mat> gens = w.algebra.generators;
  if (gens.empty()) gens = w.algebra.space.basis();
  Mat stacked(static_cast<Eigen::Index>(gens.size()) * d2 * d, d2 * d);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    Mat p = w.irrep(i, gens[k]);
    Mat q = w2.irrep(j, gens[k]);
    stacked.middleRows(static_cast<Eigen::Index>(k) * d2 * d, d2 * d) =
        kron(p.transpose(), Mat::Identity(d2, d2)) -
        kron(Mat::Identity(d, d), q);
  }
  return null_space(stacked, tol.rank).cols();
}

bool is_irreducible(const WedderburnData& w, int i, const Tolerances& tol) {
  return intertwiner_dim(w, i, w, i, tol) == 1;
}

}  // namespace cenv
