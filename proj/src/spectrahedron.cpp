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

#include "cenv/spectrahedron.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cenv/errors.hpp"

namespace cenv {

double tuple_norm(const ChoiTuple& a) {
  double s = 0.0;
  for (const Mat& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

double tuple_distance(const ChoiTuple& a, const ChoiTuple& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]).squaredNorm();
  return std::sqrt(s);
}

double tuple_inner(const ChoiTuple& a, const ChoiTuple& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += hs_inner(a[i], b[i]).real();
  return s;
}

std::vector<double> flatten_re(const ChoiTuple& a) {
  std::vector<double> out;
  for (const Mat& m : a)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c).real());
  return out;
}

std::vector<double> flatten_im(const ChoiTuple& a) {
  std::vector<double> out;
  for (const Mat& m : a)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c).imag());
  return out;
}

Mat identity_choi(Eigen::Index d) {
  CVec omega = CVec::Zero(d * d);
  for (Eigen::Index k = 0; k < d; ++k) omega(k * d + k) = 1.0;
  return omega * omega.adjoint();
}

Mat apply_choi(const ChoiTuple& j, std::span<const Mat> x, Eigen::Index d) {
  Mat out = Mat::Zero(d, d);
  for (std::size_t b = 0; b < j.size(); ++b) {
    const Eigen::Index db = x[b].rows();
    for (Eigen::Index k = 0; k < db; ++k)
      for (Eigen::Index l = 0; l < db; ++l)
        if (x[b](k, l) != cplx(0.0, 0.0))
          out += x[b](k, l) * j[b].block(k * d, l * d, d, d);
  }
  return out;
}

UcpSpectrahedron::UcpSpectrahedron(std::vector<Eigen::Index> source_dims,
                                   Eigen::Index target_dim,
                                   std::vector<std::vector<Mat>> elements,
                                   std::vector<Mat> targets,
                                   const Tolerances& tol)
    : dims_(std::move(source_dims)),
      d_(target_dim),
      elems_(std::move(elements)),
      targets_(std::move(targets)),
      tol_(tol) {
  if (elems_.size() != targets_.size())
    throw std::invalid_argument("spectrahedron: constraint count mismatch");
  for (Eigen::Index db : dims_) {
    offsets_.push_back(ns_);
    ns_ += db * db;
  }
  const Eigen::Index kc = static_cast<Eigen::Index>(targets_.size());
  c_ = Mat::Zero(kc, ns_);
  t_ = Mat::Zero(kc, d_ * d_);
  for (Eigen::Index k = 0; k < kc; ++k) {
    const auto& x = elems_[static_cast<std::size_t>(k)];
    const Mat& t = targets_[static_cast<std::size_t>(k)];
    if (x.size() != dims_.size() || t.rows() != d_ || t.cols() != d_)
      throw std::invalid_argument("spectrahedron: constraint shape mismatch");
    for (std::size_t b = 0; b < dims_.size(); ++b) {
      const Eigen::Index db = dims_[b];
      if (x[b].rows() != db || x[b].cols() != db)
        throw std::invalid_argument("spectrahedron: block shape mismatch");
      for (Eigen::Index r = 0; r < db; ++r)
        for (Eigen::Index c = 0; c < db; ++c)
          c_(k, offsets_[b] + r * db + c) = x[b](r, c);
    }
    for (Eigen::Index p = 0; p < d_; ++p)
      for (Eigen::Index q = 0; q < d_; ++q) t_(k, p * d_ + q) = t(p, q);
  }
  if (kc > 0 && ns_ > 0) {
    Eigen::JacobiSVD<Mat> svd(c_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (smax > 0.0 && s(i) > tol_.rank * smax) ++rank_;
    vr_ = svd.matrixV().leftCols(rank_);
    Mat ur = svd.matrixU().leftCols(rank_);
    RVec inv = s.head(rank_).cwiseInverse();
    y_ls_ = vr_ * (inv.asDiagonal() * (ur.adjoint() * t_));
  } else {
    vr_ = Mat::Zero(ns_, 0);
    y_ls_ = Mat::Zero(ns_, d_ * d_);
  }
  const double res = (c_ * y_ls_ - t_).norm();
  affine_feasible_ = res <= 1e-7 * std::max(1.0, t_.norm());
  ls_ = from_slices(y_ls_);
}

Eigen::Index UcpSpectrahedron::num_variables() const {
  Eigen::Index n = 0;
  for (Eigen::Index db : dims_) n += (db * d_) * (db * d_);
  return n;
}

Eigen::Index UcpSpectrahedron::null_dim() const { return (ns_ - rank_) * d_ * d_; }

ChoiTuple UcpSpectrahedron::zero() const {
  ChoiTuple out;
  for (Eigen::Index db : dims_) out.push_back(Mat::Zero(db * d_, db * d_));
  return out;
}

Mat UcpSpectrahedron::to_slices(const ChoiTuple& j) const {
  Mat y(ns_, d_ * d_);
  for (std::size_t b = 0; b < dims_.size(); ++b) {
    const Eigen::Index db = dims_[b];
    for (Eigen::Index k = 0; k < db; ++k)
      for (Eigen::Index l = 0; l < db; ++l)
        for (Eigen::Index p = 0; p < d_; ++p)
          for (Eigen::Index q = 0; q < d_; ++q)
            y(offsets_[b] + k * db + l, p * d_ + q) = j[b](k * d_ + p, l * d_ + q);
  }
  return y;
}

ChoiTuple UcpSpectrahedron::from_slices(const Mat& y) const {
  ChoiTuple out = zero();
  for (std::size_t b = 0; b < dims_.size(); ++b) {
    const Eigen::Index db = dims_[b];
    Mat& jb = out[b];
    for (Eigen::Index k = 0; k < db; ++k)
      for (Eigen::Index l = 0; l < db; ++l)
        for (Eigen::Index p = 0; p < d_; ++p)
          for (Eigen::Index q = 0; q < d_; ++q)
            jb(k * d_ + p, l * d_ + q) = y(offsets_[b] + k * db + l, p * d_ + q);
    jb = (jb + jb.adjoint()).eval() / 2.0;
  }
  return out;
}

ChoiTuple UcpSpectrahedron::project_affine(const ChoiTuple& j) const {
  Mat y = to_slices(j);
  y -= vr_ * (vr_.adjoint() * (y - y_ls_));
  return from_slices(y);
}

ChoiTuple UcpSpectrahedron::project_normal(const ChoiTuple& j) const {
  Mat y = to_slices(j);
  return from_slices(vr_ * (vr_.adjoint() * y));
}

ChoiTuple UcpSpectrahedron::project_psd(const ChoiTuple& j) const {
  ChoiTuple out;
  out.reserve(j.size());
  for (const Mat& m : j) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    RVec w = es.eigenvalues().cwiseMax(0.0);
    const Mat& v = es.eigenvectors();
    Mat p = v * w.asDiagonal() * v.adjoint();
    out.push_back((p + p.adjoint()) / 2.0);
  }
  return out;
}

double UcpSpectrahedron::constraint_residual(const ChoiTuple& j) const {
  return (c_ * to_slices(j) - t_).norm();
}

double UcpSpectrahedron::min_eigenvalue(const ChoiTuple& j) const {
  double m = std::numeric_limits<double>::infinity();
  for (const Mat& b : j) {
    if (b.size() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Mat> es(b, Eigen::EigenvaluesOnly);
    m = std::min(m, es.eigenvalues()(0));
  }
  return m;
}

namespace {

// Real Hermitian coordinates of the residuals Phi(x_k) - t_k.
RVec residual_coords(const UcpSpectrahedron& s, const ChoiTuple& j) {
  const Eigen::Index d = s.target_dim();
  RVec r(static_cast<Eigen::Index>(s.num_constraints()) * d * d);
  for (std::size_t k = 0; k < s.num_constraints(); ++k) {
    Mat v = apply_choi(j, s.constraint_elements()[k], d) - s.targets()[k];
    r.segment(static_cast<Eigen::Index>(k) * d * d, d * d) =
        herm_to_coords((v + v.adjoint()) / 2.0);
  }
  return r;
}

ChoiTuple outer_tuple(const std::vector<Mat>& zs) {
  ChoiTuple out;
  for (const Mat& z : zs) out.push_back(z * z.adjoint());
  return out;
}

}  // namespace

std::optional<ChoiTuple> UcpSpectrahedron::polish(const ChoiTuple& near,
                                                  const ChoiTuple* avoid,
                                                  double sep) const {
  if (!affine_feasible_) return std::nullopt;
  const std::size_t nb = dims_.size();
  std::vector<RVec> vals(nb);
  std::vector<Mat> vecs(nb);
  double top = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    Eigen::SelfAdjointEigenSolver<Mat> es((near[b] + near[b].adjoint()) / 2.0);
    vals[b] = es.eigenvalues();
    vecs[b] = es.eigenvectors();
    if (vals[b].size()) top = std::max(top, vals[b].maxCoeff());
  }
  if (top <= 0.0) return std::nullopt;
  // Iterate towards exact feasibility; accept two orders below tol.rank.
  const double scale = std::max(1.0, t_.norm());
  const double target_tol = 1e-13 * scale;
  const double accept_tol = 1e-2 * tol_.rank * scale;
  const Eigen::Index d = d_;
  const Eigen::Index kc = static_cast<Eigen::Index>(targets_.size());
  const double h = std::sqrt(2.0) / 2.0;
  // With `avoid`, one extra equation <J - avoid, G> = |G|^2 / 2 for
  // G = near - avoid keeps the iteration off `avoid`: the segment from
  // `avoid` to a second point crosses this hyperplane.
  ChoiTuple g;
  double g_norm = 0.0, g_rhs = 0.0;
  if (avoid) {
    for (std::size_t b = 0; b < nb; ++b) g.push_back(near[b] - (*avoid)[b]);
    g_norm = tuple_norm(g);
    if (g_norm > 0.0) {
      for (Mat& m : g) m /= g_norm;
      g_rhs = tuple_inner(*avoid, g) + g_norm / 2.0;
    }
  }
  const bool use_plane = g_norm > 0.0;
  auto full_residual = [&](const std::vector<Mat>& zs) {
    ChoiTuple j = outer_tuple(zs);
    RVec r = residual_coords(*this, j);
    if (use_plane) {
      r.conservativeResize(r.size() + 1);
      r(r.size() - 1) = tuple_inner(j, g) - g_rhs;
    }
    return r;
  };
  // Candidate ranks: cut the joint spectrum at its large gaps.
  std::vector<double> spectrum;
  for (const RVec& v : vals)
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v(i) > 1e-13 * top) spectrum.push_back(v(i));
  std::sort(spectrum.rbegin(), spectrum.rend());
  std::vector<double> cuts;
  for (std::size_t k = 0; k + 1 < spectrum.size() && cuts.size() < 4; ++k)
    if (spectrum[k] > 30.0 * spectrum[k + 1])
      cuts.push_back(std::sqrt(spectrum[k] * spectrum[k + 1]));
  cuts.push_back(spectrum.back() / 2.0);
  for (double th : cuts) {
    std::vector<Mat> zs(nb);
    Eigen::Index ncols = 0;
    std::vector<Eigen::Index> col_off(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      std::vector<Eigen::Index> keep;
      for (Eigen::Index i = 0; i < vals[b].size(); ++i)
        if (vals[b](i) > th) keep.push_back(i);
      zs[b].resize(vecs[b].rows(), static_cast<Eigen::Index>(keep.size()));
      for (std::size_t c = 0; c < keep.size(); ++c)
        zs[b].col(static_cast<Eigen::Index>(c)) =
            vecs[b].col(keep[c]) * std::sqrt(vals[b](keep[c]));
      col_off[b] = ncols;
      ncols += 2 * zs[b].size();
    }
    if (ncols == 0) continue;
    RVec r = full_residual(zs);
    for (int it = 0; it < 60; ++it) {
      if (r.norm() < target_tol) break;
      RMat jac = RMat::Zero(r.size(), ncols);
      if (use_plane) {
        for (std::size_t b = 0; b < nb; ++b) {
          const Mat gz = g[b] * zs[b];
          const Eigen::Index kb = zs[b].cols();
          for (Eigen::Index a = 0; a < gz.rows(); ++a)
            for (Eigen::Index cc = 0; cc < kb; ++cc) {
              const Eigen::Index col = col_off[b] + 2 * (a * kb + cc);
              jac(r.size() - 1, col) = 2.0 * gz(a, cc).real();
              jac(r.size() - 1, col + 1) = 2.0 * gz(a, cc).imag();
            }
        }
      }
      for (Eigen::Index k = 0; k < kc; ++k) {
        const auto& xk = elems_[static_cast<std::size_t>(k)];
        for (std::size_t b = 0; b < nb; ++b) {
          const Eigen::Index db = dims_[b];
          const Mat& z = zs[b];
          const Eigen::Index kb = z.cols();
          if (kb == 0) continue;
          // pq[q] = conj(x) * (rows l*d + q of Z), a db x kb matrix.
          std::vector<Mat> pq(static_cast<std::size_t>(d));
          Mat xc = xk[b].conjugate();
          for (Eigen::Index q = 0; q < d; ++q) {
            Mat zq(db, kb);
            for (Eigen::Index l = 0; l < db; ++l) zq.row(l) = z.row(l * d + q);
            pq[static_cast<std::size_t>(q)] = xc * zq;
          }
          auto add = [&](Eigen::Index row, Eigen::Index p, const Mat& m, cplx c) {
            for (Eigen::Index kp = 0; kp < db; ++kp)
              for (Eigen::Index cc = 0; cc < kb; ++cc) {
                const cplx v = c * m(kp, cc);
                const Eigen::Index a = kp * d + p;
                const Eigen::Index col = col_off[b] + 2 * (a * kb + cc);
                jac(row, col) += 2.0 * v.real();
                jac(row, col + 1) += 2.0 * v.imag();
              }
          };
          const Eigen::Index base = k * d * d;
          for (Eigen::Index p = 0; p < d; ++p)
            add(base + p, p, pq[static_cast<std::size_t>(p)], 1.0);
          Eigen::Index idx = base + d;
          for (Eigen::Index p = 0; p < d; ++p)
            for (Eigen::Index q = p + 1; q < d; ++q) {
              const Mat& fp = pq[static_cast<std::size_t>(q)];  // F Z rows (k,p)
              const Mat& fq = pq[static_cast<std::size_t>(p)];  // F^* Z rows (k,q)
              add(idx, p, fp, h);
              add(idx, q, fq, h);
              add(idx + 1, q, fq, cplx(0.0, -h));
              add(idx + 1, p, fp, cplx(0.0, h));
              idx += 2;
            }
        }
      }
      // Levenberg-Marquardt with damping |r|: the solutions of interest are
      // often singular, where undamped minimum-norm steps oscillate.
      RMat normal = jac.transpose() * jac;
      normal.diagonal().array() += 0.1 * r.norm();
      RVec step = normal.ldlt().solve(-(jac.transpose() * r));
      if (!step.allFinite()) break;
      bool moved = false;
      for (double alpha = 1.0; alpha > 1e-3 && !moved; alpha /= 2.0) {
        std::vector<Mat> trial = zs;
        for (std::size_t b = 0; b < nb; ++b) {
          Mat& z = trial[b];
          const Eigen::Index kb = z.cols();
          for (Eigen::Index a = 0; a < z.rows(); ++a)
            for (Eigen::Index cc = 0; cc < kb; ++cc) {
              const Eigen::Index col = col_off[b] + 2 * (a * kb + cc);
              z(a, cc) += alpha * cplx(step(col), step(col + 1));
            }
        }
        RVec rt = full_residual(trial);
        if (rt.norm() < r.norm()) {
          zs = std::move(trial);
          r = std::move(rt);
          moved = true;
        }
      }
      if (!moved) break;
    }
    ChoiTuple j = outer_tuple(zs);
    if (residual_coords(*this, j).norm() < accept_tol &&
        constraint_residual(j) < 10.0 * accept_tol &&
        (!avoid || tuple_distance(j, *avoid) > sep))
      return j;
  }
  return std::nullopt;
}

namespace {

ChoiTuple random_direction(const UcpSpectrahedron& s, std::mt19937_64& rng) {
  ChoiTuple dir = s.zero();
  for (Mat& m : dir) m = random_hermitian(m.rows(), rng);
  ChoiTuple nrm = s.project_normal(dir);
  for (std::size_t b = 0; b < dir.size(); ++b) dir[b] -= nrm[b];
  const double n = tuple_norm(dir);
  if (n > 0.0)
    for (Mat& m : dir) m /= n;
  return dir;
}

}  // namespace

UniquenessResult is_unique_ucp_extension(const UcpSpectrahedron& s,
                                         std::uint64_t seed, int trials,
                                         const Tolerances& tol,
                                         long iteration_cap) {
  if (!s.basepoint) throw std::invalid_argument("spectrahedron has no basepoint");
  const ChoiTuple& j0 = *s.basepoint;
  const double scale = std::max(1.0, tuple_norm(j0));
  if (s.constraint_residual(j0) > 1e-7 * scale || s.min_eigenvalue(j0) < -tol.psd)
    throw VerificationError("basepoint is not in the spectrahedron");
  UniquenessResult res;
  if (s.null_dim() == 0) {
    res.unique = true;
    res.method = "exact-nullspace";
    return res;
  }
  std::mt19937_64 rng(derive_seed(seed, 0xD1C5));
  const double lmin = s.min_eigenvalue(j0);
  if (lmin > tol.psd) {
    // Interior basepoint: a short step along any null direction stays PSD.
    ChoiTuple dir = random_direction(s, rng);
    ChoiTuple w = j0;
    for (std::size_t b = 0; b < w.size(); ++b) w[b] += (lmin / 2.0) * dir[b];
    res.unique = false;
    res.method = "interior";
    res.witness_distance = tuple_distance(w, j0);
    res.witness = std::move(w);
    return res;
  }
  const double eps = 1e-3 * tuple_norm(j0);
  for (int t = 0; t < trials; ++t) {
    ++res.trials_run;
    ChoiTuple dir = random_direction(s, rng);
    ChoiTuple y = j0;
    for (std::size_t b = 0; b < y.size(); ++b) y[b] += eps * dir[b];
    ChoiTuple inc = s.zero();
    bool decided = false;
    long next_polish = 200;
    for (long it = 0; it < iteration_cap; ++it) {
      ++res.iterations;
      ChoiTuple a = s.project_affine(y);
      ChoiTuple shifted = a;
      for (std::size_t b = 0; b < a.size(); ++b) shifted[b] += inc[b];
      y = s.project_psd(shifted);
      for (std::size_t b = 0; b < a.size(); ++b) inc[b] = shifted[b] - y[b];
      const double r = tuple_distance(a, y);
      const double dist = tuple_distance(y, j0);
      if (r < tol.rank * scale) {
        if (dist > tol.sep) {
          res.unique = false;
          res.method = "witness";
          res.witness_distance = dist;
          res.witness = std::move(y);
          return res;
        }
        decided = true;
        break;
      }
      // Polish on a doubling schedule; failed attempts are expensive.
      if (it + 1 != next_polish) continue;
      next_polish *= 2;
      if (dist <= 10.0 * tol.sep) continue;
      // The set is convex: a second point near j0 also gives points further
      // out along the same ray, where the polish is better conditioned.
      for (double stretch = 1.0; stretch * dist <= scale; stretch *= 30.0) {
        ChoiTuple near = j0;
        for (std::size_t b = 0; b < near.size(); ++b)
          near[b] += stretch * (y[b] - j0[b]);
        auto p = s.polish(near, &j0, tol.sep);
        if (!p) continue;
        const double pd = tuple_distance(*p, j0);
        if (pd <= tol.sep) continue;
        res.unique = false;
        res.method = "witness";
        res.witness_distance = pd;
        res.witness = std::move(*p);
        return res;
      }
    }
    if (!decided) {
      std::ostringstream msg;
      msg << "uniqueness probe " << t << " did not converge within "
          << iteration_cap << " iterations";
      throw InconclusiveError(msg.str());
    }
  }
  res.unique = true;
  res.method = "probes";
  return res;
}

FeasibilityResult find_feasible_point(const UcpSpectrahedron& s, double trace,
                                      const Tolerances& tol,
                                      long iteration_cap) {
  FeasibilityResult res;
  if (s.source_dims().empty()) {
    res.method = "empty";
    return res;
  }
  if (!s.affine_feasible()) {
    res.method = "affine-infeasible";
    return res;
  }
  const ChoiTuple& ls = s.min_norm_point();
  const double scale = std::max(1.0, tuple_norm(ls));
  if (s.min_eigenvalue(ls) >= 0.0) {
    res.feasible = true;
    res.method = "converged";
    res.point = ls;
    return res;
  }
  ChoiTuple y = ls;
  for (long it = 0; it < iteration_cap; ++it) {
    ++res.iterations;
    ChoiTuple a = s.project_affine(y);
    y = s.project_psd(a);
    const double r = tuple_distance(a, y);
    if (r < tol.rank * scale) {
      res.feasible = true;
      res.method = "converged";
      res.point = std::move(y);
      return res;
    }
    const long k = it + 1;
    if (k == 20 || k == 50 || k == 100 || k % 200 == 0) {
      ChoiTuple gap = y;
      for (std::size_t b = 0; b < gap.size(); ++b) gap[b] -= a[b];
      ChoiTuple w = s.project_normal(gap);
      const double wn = tuple_norm(w);
      if (wn > 0.0) {
        const double kappa = tuple_inner(w, ls);
        const double mu = s.min_eigenvalue(w);
        const double bound = mu * trace;
        const double margin = 1e-9 * wn * (tuple_norm(ls) + trace);
        if (kappa < bound - margin) {
          res.method = "separation";
          res.kappa = kappa / wn;
          res.bound = bound / wn;
          return res;
        }
      }
      if (k % 200 == 0 && r < 1e-2 * scale) {
        if (auto p = s.polish(y)) {
          res.feasible = true;
          res.method = "polished";
          res.point = std::move(*p);
          return res;
        }
      }
    }
  }
  std::ostringstream msg;
  msg << "feasibility search did not converge within " << iteration_cap
      << " iterations";
  throw InconclusiveError(msg.str());
}

}  // namespace cenv
