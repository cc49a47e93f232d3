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

#include "cenv/opsys.hpp"

#include <sstream>

#include "cenv/errors.hpp"

namespace cenv {

OperatorSystem opsys_from_generators(Eigen::Index n, std::span<const Mat> gens,
                                     const Tolerances& tol, std::string label) {
  if (n <= 0) throw InputError("ambient dimension must be positive");
  std::vector<Mat> all;
  all.reserve(2 * gens.size() + 1);
  all.push_back(Mat::Identity(n, n));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].rows() != n || gens[i].cols() != n) {
      std::ostringstream msg;
      msg << "generator " << i << " is " << gens[i].rows() << "x"
          << gens[i].cols() << ", expected " << n << "x" << n;
      throw InputError(msg.str());
    }
    all.push_back(gens[i]);
    all.push_back(gens[i].adjoint());
  }
  OperatorSystem e;
  e.ambient = n;
  e.space = span_of(all, n, tol);
  e.label = std::move(label);
  return e;
}

MatSubspace product_span(const MatSubspace& p, const MatSubspace& q,
                         const Tolerances& tol) {
  const Eigen::Index n = p.ambient();
  if (q.ambient() != n)
    throw std::invalid_argument("product_span: ambient mismatch");
  // When I is in q, P.Q contains p, and seeding Gram-Schmidt with p keeps
  // p's basis as a prefix. Products of orthonormal basis elements have norm
  // at most 1.
  MatSubspace out(n);
  if (subspace_contains(q, Mat::Identity(n, n), tol))
    for (const Mat& a : p.basis()) out.try_append(a, tol.rank);
  const Eigen::Index full = n * n;
  for (const Mat& a : p.basis()) {
    for (const Mat& b : q.basis()) {
      if (out.dim() == full) return out;
      Mat ab = a * b;
      out.try_append(ab, tol.rank * std::max(1.0, ab.norm()));
    }
  }
  return out;
}

MatSubspace power_span(const MatSubspace& e, int k, const Tolerances& tol) {
  if (k < 1) throw std::invalid_argument("power_span: k must be >= 1");
  MatSubspace cur = e;
  for (int i = 1; i < k; ++i) {
    MatSubspace next = product_span(cur, e, tol);
    if (next.dim() == cur.dim()) return next;
    cur = std::move(next);
  }
  return cur;
}

MatSubspace power_span(const OperatorSystem& e, int k, const Tolerances& tol) {
  return power_span(e.space, k, tol);
}

std::vector<Eigen::Index> power_chain(const MatSubspace& e, MatSubspace* last,
                                      const Tolerances& tol) {
  std::vector<Eigen::Index> dims{e.dim()};
  MatSubspace cur = e;
  while (true) {
    MatSubspace next = product_span(cur, e, tol);
    if (next.dim() == cur.dim()) break;
    dims.push_back(next.dim());
    cur = std::move(next);
  }
  if (last) *last = std::move(cur);
  return dims;
}

CStarAlgebra generated_cstar(const OperatorSystem& e, const Tolerances& tol) {
  CStarAlgebra a;
  a.ambient = e.ambient;
  power_chain(e.space, &a.space, tol);
  a.unital = subspace_contains(a.space, Mat::Identity(e.ambient, e.ambient), tol);
  a.generators = e.space.basis();
  return a;
}

namespace {

std::string check_adjoint_closed(const MatSubspace& s, const Tolerances& tol) {
  for (std::size_t i = 0; i < s.basis().size(); ++i) {
    if (!subspace_contains(s, s.basis()[i].adjoint(), tol))
      return "adjoint of basis element " + std::to_string(i) +
             " is not in the space";
  }
  return {};
}

}  // namespace

std::string check_operator_system(const OperatorSystem& e,
                                  const Tolerances& tol) {
  if (!subspace_contains(e.space, Mat::Identity(e.ambient, e.ambient), tol))
    return "identity is not in the space";
  return check_adjoint_closed(e.space, tol);
}

std::string check_cstar_algebra(const CStarAlgebra& a, const Tolerances& tol) {
  if (auto msg = check_adjoint_closed(a.space, tol); !msg.empty()) return msg;
  const auto& b = a.space.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!subspace_contains(a.space, b[i] * b[j], tol))
        return "product of basis elements " + std::to_string(i) + " and " +
               std::to_string(j) + " is not in the space";
  return {};
}

}  // namespace cenv
