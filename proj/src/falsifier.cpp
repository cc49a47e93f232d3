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

#include "cenv/falsifier.hpp"

#include <cmath>

namespace cenv {

Mat LinearMap::operator()(const Mat& a) const {
  CVec c = domain.coordinates(a);
  Mat out = Mat::Zero(target_dim, target_dim);
  for (Eigen::Index k = 0; k < c.size(); ++k)
    out += c(k) * images[static_cast<std::size_t>(k)];
  return out;
}

LinearMap make_linear_map(const MatSubspace& domain,
                          const std::function<Mat(const Mat&)>& f,
                          Eigen::Index target_dim) {
  LinearMap m;
  m.domain = domain;
  m.target_dim = target_dim;
  for (const Mat& b : domain.basis()) {
    Mat v = f(b);
    if (v.rows() != target_dim || v.cols() != target_dim)
      throw std::invalid_argument("make_linear_map: image has the wrong shape");
    m.images.push_back(std::move(v));
  }
  return m;
}

LinearMap tensor_map(const LinearMap& phi, const LinearMap& psi) {
  const Eigen::Index n = phi.domain.ambient() * psi.domain.ambient();
  MatSubspace dom(n);
  LinearMap out;
  out.target_dim = phi.target_dim * psi.target_dim;
  for (std::size_t i = 0; i < phi.images.size(); ++i)
    for (std::size_t j = 0; j < psi.images.size(); ++j) {
      // Kronecker products of orthonormal bases are orthonormal, so the
      // append never discards.
      if (!dom.try_append(kron(phi.domain.basis()[i], psi.domain.basis()[j]), 0.5))
        throw std::logic_error("tensor_map: domain basis is not orthonormal");
      out.images.push_back(kron(phi.images[i], psi.images[j]));
    }
  out.domain = std::move(dom);
  return out;
}

namespace {

Mat amplify(const std::vector<Mat>& coeffs, const std::vector<Mat>& parts,
            Eigen::Index s) {
  const Eigen::Index m = coeffs.front().rows();
  Mat x = Mat::Zero(m * s, m * s);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) {
        const cplx c = coeffs[k](i, j);
        if (c != cplx(0.0, 0.0)) x.block(i * s, j * s, s, s) += c * parts[k];
      }
  return x;
}

struct TopPair {
  double sigma = 0.0;
  CVec u, v;
};

// Largest singular triple. Small matrices use a dense eigensolve; larger
// ones use warm-started power iteration, which only feeds the search
// direction. Reported norms are always recomputed exactly.
TopPair top_singular(const Mat& x, const CVec& warm) {
  TopPair t;
  if (x.rows() <= 48 || warm.size() != x.cols()) {
    Eigen::SelfAdjointEigenSolver<Mat> es(x.adjoint() * x);
    const Eigen::Index last = x.cols() - 1;
    t.v = es.eigenvectors().col(last);
  } else {
    CVec v = warm;
    for (int it = 0; it < 25; ++it) {
      CVec w = x.adjoint() * (x * v);
      const double nw = w.norm();
      if (nw == 0.0) break;
      v = w / nw;
    }
    t.v = v;
  }
  CVec xv = x * t.v;
  t.sigma = xv.norm();
  t.u = t.sigma > 0.0 ? CVec(xv / t.sigma) : CVec::Zero(x.rows());
  return t;
}

// U conj(e) V^*, with u, v reshaped to m x s row-major blocks.
Mat gradient_part(const TopPair& t, const Mat& e, Eigen::Index m, Eigen::Index s) {
  Mat u(m, s), v(m, s);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index a = 0; a < s; ++a) {
      u(i, a) = t.u(i * s + a);
      v(i, a) = t.v(i * s + a);
    }
  return u * e.conjugate() * v.adjoint();
}

double coeff_norm(const std::vector<Mat>& c) {
  double s = 0.0;
  for (const Mat& m : c) s += m.squaredNorm();
  return std::sqrt(s);
}

}  // namespace

std::optional<Counterexample> falsify_complete_isometry(const LinearMap& phi,
                                                        int trials,
                                                        std::uint64_t seed,
                                                        const Tolerances& tol,
                                                        int level_cap) {
  const std::vector<Mat>& basis = phi.domain.basis();
  if (basis.empty() || trials <= 0) return std::nullopt;
  const Eigen::Index n = phi.domain.ambient();
  const Eigen::Index dt = phi.target_dim;
  if (dt == 0) {
    Counterexample c;
    c.level = 1;
    c.x = basis.front() / op_norm(basis.front());
    c.gap = 1.0;
    return c;
  }
  if (level_cap <= 0) level_cap = static_cast<int>(dt);
  const std::size_t nk = basis.size();

  for (int trial = 0; trial < trials; ++trial) {
    const Eigen::Index m = 1 + (trial % level_cap);
    std::mt19937_64 rng(derive_seed(seed, 0xFA15, static_cast<std::uint64_t>(trial)));
    std::vector<Mat> c(nk);
    for (auto& ck : c) ck = random_complex(m, m, rng);
    {
      const double cn = coeff_norm(c);
      for (auto& ck : c) ck /= cn;
    }
    CVec wx, wp;
    auto evaluate = [&](const std::vector<Mat>& coeffs, TopPair& px, TopPair& pp) {
      px = top_singular(amplify(coeffs, basis, n), wx);
      pp = top_singular(amplify(coeffs, phi.images, dt), wp);
      if (pp.sigma <= 0.0) return std::numeric_limits<double>::infinity();
      return std::log(px.sigma) - std::log(pp.sigma);
    };
    TopPair px, pp;
    double f = evaluate(c, px, pp);
    double eta = 0.5;
    bool violated = false;
    int extra = 0;
    for (int step = 0; step < 400; ++step) {
      if (!std::isfinite(f)) break;
      wx = px.v;
      wp = pp.v;
      std::vector<Mat> g(nk);
      for (std::size_t k = 0; k < nk; ++k)
        g[k] = gradient_part(px, basis[k], m, n) / px.sigma -
               gradient_part(pp, phi.images[k], m, dt) / pp.sigma;
      const double gn = coeff_norm(g);
      if (gn < 1e-14) break;
      bool improved = false;
      for (int bt = 0; bt < 30; ++bt) {
        std::vector<Mat> trialc(nk);
        for (std::size_t k = 0; k < nk; ++k) trialc[k] = c[k] + (eta / gn) * g[k];
        const double tn = coeff_norm(trialc);
        for (auto& ck : trialc) ck /= tn;
        TopPair qx, qp;
        const double ft = evaluate(trialc, qx, qp);
        if (ft > f) {
          improved = ft - f > 1e-12 * std::max(1.0, std::abs(f));
          c = std::move(trialc);
          px = std::move(qx);
          pp = std::move(qp);
          f = ft;
          eta = std::min(1.0, eta * 2.0);
          break;
        }
        eta /= 2.0;
      }
      if (!improved && !violated) break;
      if (!violated && f > 1e-7) {
        // Candidate: confirm with exact norms.
        Mat x = amplify(c, basis, n);
        const double nx = op_norm(x);
        const double ny = op_norm(amplify(c, phi.images, dt));
        if (ny < nx - tol.norm * nx) violated = true;
      }
      if (violated && (++extra > 200 || !improved)) break;
    }
    Mat x = amplify(c, basis, n);
    const double nx = op_norm(x);
    if (nx == 0.0) continue;
    const double ny = op_norm(amplify(c, phi.images, dt));
    const double gap = 1.0 - ny / nx;
    if (gap > tol.norm) {
      Counterexample ce;
      ce.level = static_cast<int>(m);
      ce.trial = trial;
      ce.x = x / nx;
      ce.image_norm = ny / nx;
      ce.gap = gap;
      return ce;
    }
  }
  return std::nullopt;
}

}  // namespace cenv
