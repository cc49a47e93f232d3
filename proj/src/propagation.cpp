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

#include "cenv/propagation.hpp"

#include <algorithm>
#include <sstream>

#include "cenv/errors.hpp"
#include "cenv/tensor.hpp"

namespace cenv {

PropResult propagation_number(const Envelope& env, const Tolerances& tol) {
  PropResult r;
  r.envelope_dim = env.algebra.algebra.space.dim();
  MatSubspace p = env.image;
  for (int k = 1;; ++k) {
    r.chain.push_back(p.dim());
    if (p.dim() == r.envelope_dim) {
      r.value = k;
      break;
    }
    MatSubspace next = product_span(p, env.image, tol);
    if (next.dim() == p.dim()) {
      std::ostringstream msg;
      msg << "power chain stabilises at dim " << p.dim()
          << " below the envelope dimension " << r.envelope_dim;
      throw VerificationError(msg.str());
    }
    p = std::move(next);
  }
  for (int extra = 0; extra < 2; ++extra) {
    p = product_span(p, env.image, tol);
    r.tail.push_back(p.dim());
  }
  return r;
}

PropResult propagation_number(const OperatorSystem& e, const BoundaryOptions& opt) {
  return propagation_number(cstar_envelope(e, opt), opt.tol);
}

std::vector<Eigen::Index> ambient_chain(const OperatorSystem& e, const Tolerances& tol) {
  return power_chain(e.space, nullptr, tol);
}

namespace {

double max_distance(const MatSubspace& from, const MatSubspace& to) {
  double d = 0.0;
  for (const Mat& b : from.basis()) d = std::max(d, hs_norm(b - to.project(b)));
  return d;
}

}  // namespace

PowerTensorReport verify_power_tensor(const OperatorSystem& e,
                                      const OperatorSystem& f, int n_max,
                                      const Tolerances& tol) {
  PowerTensorReport r;
  r.n_max = n_max;
  r.pass = true;
  const MatSubspace ef = kron_span(e.space, f.space, tol);
  MatSubspace pe = e.space, pf = f.space, pt = ef;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      pe = product_span(pe, e.space, tol);
      pf = product_span(pf, f.space, tol);
      pt = product_span(pt, ef, tol);
    }
    MatSubspace lhs = kron_span(pe, pf, tol);
    r.tensor_of_powers.push_back(lhs.dim());
    r.power_of_tensor.push_back(pt.dim());
    if (!subspace_equal(lhs, pt, tol) && r.pass) {
      r.pass = false;
      r.failed_n = n;
      r.defect = std::max(max_distance(lhs, pt), max_distance(pt, lhs));
    }
  }
  return r;
}

PropMaxReport verify_prop_max(const Envelope& e, const Envelope& f,
                              const Envelope& product, const Tolerances& tol) {
  PropMaxReport r;
  r.left = propagation_number(e, tol);
  r.right = propagation_number(f, tol);
  r.product = propagation_number(product, tol);
  r.pass = r.product.value == std::max(r.left.value, r.right.value);
  return r;
}

}  // namespace cenv
