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


#include "cenv/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "cenv/errors.hpp"

namespace cenv {

TensorOptions PipelineOptions::tensor() const {
  TensorOptions t;
  t.boundary = boundary;
  t.falsifier_trials = falsifier_trials;
  t.max_ambient_product = max_ambient_product;
  return t;
}

namespace {

std::string killed_str(const BlockSet& s) {
  std::ostringstream o;
  o << "{";
  for (std::size_t k = 0; k < s.size(); ++k) o << (k ? "," : "") << s[k] + 1;
  o << "}";
  return o.str();
}

FactorAnalysis as_factor(const SystemAnalysis& a) {
  FactorAnalysis f;
  f.system = a.system;
  f.wedderburn = a.wedderburn;
  f.dk = a.dk;
  f.lattice = a.lattice;
  return f;
}

}  // namespace

SystemAnalysis analyze_system(const OperatorSystem& e, const PipelineOptions& opt) {
  const Tolerances& tol = opt.boundary.tol;
  if (std::string bad = check_operator_system(e, tol); !bad.empty())
    throw InputError((e.label.empty() ? std::string("system") : e.label) + ": " + bad);
  SystemAnalysis a;
  a.system = e;
  a.wedderburn = wedderburn_decompose(generated_cstar(e, tol), opt.boundary.seed, tol);
  a.dk = silov_ideal_dk(e, a.wedderburn, opt.boundary, opt.jobs);
  a.lattice = silov_ideal_lattice(e, a.wedderburn, opt.boundary, opt.jobs);
  a.routes_agree = a.dk.killed == a.lattice.killed;
  a.ambient_chain = ambient_chain(e, tol);
  if (!a.routes_agree) {
    a.failure = "Silov routes disagree: kernel-intersection " + killed_str(a.dk.killed) +
                " vs lattice " + killed_str(a.lattice.killed);
    return a;
  }
  a.envelope = quotient_envelope(e, a.wedderburn, a.dk.killed, tol);
  a.propagation = propagation_number(*a.envelope, tol);
  a.silov_counterexample = falsify_complete_isometry(
      restricted_quotient(e, a.wedderburn, a.dk.killed), opt.falsifier_trials,
      derive_seed(opt.boundary.seed, 0xFA15), tol);
  if (a.silov_counterexample) {
    std::ostringstream msg;
    msg << "quotient by the Silov ideal drops a norm (gap "
        << a.silov_counterexample->gap << " at level "
        << a.silov_counterexample->level << ")";
    a.failure = msg.str();
    return a;
  }
  a.pass = true;
  return a;
}

TensorAnalysis analyze_tensor(const SystemAnalysis& e, const SystemAnalysis& f,
                              const PipelineOptions& opt) {
  for (const SystemAnalysis* s : {&e, &f})
    if (!s->pass)
      throw VerificationError("factor " + s->system.label +
                              " failed its own analysis: " + s->failure);
  const Tolerances& tol = opt.boundary.tol;
  const TensorOptions topt = opt.tensor();
  const FactorAnalysis fe = as_factor(e);
  const FactorAnalysis ff = as_factor(f);
  TensorAnalysis r;
  TensorSystem t;
  r.main = verify_main_theorem(fe, ff, topt, &t, &r.product_blocks, opt.jobs);
  r.hopenwasser = verify_hopenwasser(fe, ff, t, r.product_blocks, topt,
                                     &r.main.product_dk.uniqueness);
  const int n_max = std::max(e.propagation->value, f.propagation->value) + 1;
  r.power_tensor = verify_power_tensor(e.system, f.system, n_max, tol);
  if (r.main.pass) {
    Envelope ep = quotient_envelope(t.product, r.product_blocks,
                                    r.main.product_dk.killed, tol);
    r.prop_max = verify_prop_max(*e.envelope, *f.envelope, ep, tol);
  }
  r.pass = r.main.pass && r.hopenwasser.pass && r.power_tensor.pass &&
           r.prop_max && r.prop_max->pass;
  std::vector<std::string> fails;
  if (!r.main.pass) fails.push_back("main theorem: " + r.main.failure);
  if (!r.hopenwasser.pass) fails.push_back("a pair of boundary representations is not boundary");
  if (!r.power_tensor.pass)
    fails.push_back("powers do not commute with the tensor at n = " +
                    std::to_string(r.power_tensor.failed_n));
  if (r.prop_max && !r.prop_max->pass) {
    std::ostringstream msg;
    msg << "prop(E (x) F) = " << r.prop_max->product.value << " but max = "
        << std::max(r.prop_max->left.value, r.prop_max->right.value);
    fails.push_back(msg.str());
  }
  for (std::size_t k = 0; k < fails.size(); ++k)
    r.failure += (k ? "; " : "") + fails[k];
  return r;
}

}  // namespace cenv
