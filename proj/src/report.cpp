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


#include "cenv/report.hpp"

#include <algorithm>

#include "cenv/spec_io.hpp"

namespace cenv {

namespace {

using ojson = nlohmann::ordered_json;

ojson one_based(const BlockSet& s) {
  ojson a = ojson::array();
  for (int k : s) a.push_back(k + 1);
  return a;
}

ojson pair_list(const BlockSet& s, int right_blocks) {
  ojson a = ojson::array();
  for (int k : s) {
    auto [i, j] = pair_of(k, right_blocks);
    a.push_back({i + 1, j + 1});
  }
  return a;
}

ojson header(const char* kind, const std::vector<InputRef>& inputs,
             const ReportContext& ctx) {
  const PipelineOptions& o = ctx.options;
  const Tolerances& t = o.boundary.tol;
  ojson j;
  j["schema"] = kSchemaVersion;
  j["version"] = kVersion;
  j["kind"] = kind;
  j["inputs"] = ojson::array();
  for (const InputRef& in : inputs)
    j["inputs"].push_back({{"name", in.name}, {"digest", in.digest}});
  j["seed"] = o.boundary.seed;
  j["tolerances"] = {{"rank", t.rank}, {"psd", t.psd}, {"sep", t.sep},
                     {"norm", t.norm}, {"herm", t.herm}, {"ortho", t.ortho}};
  j["options"] = {{"falsifier_trials", o.falsifier_trials},
                  {"uniqueness_trials", o.boundary.uniqueness_trials},
                  {"iteration_cap", o.boundary.iteration_cap},
                  {"lattice_cap", o.boundary.lattice_cap},
                  {"max_ambient_product", o.max_ambient_product}};
  return j;
}

ojson timing(const ReportContext& ctx) {
  if (!ctx.seconds) return nullptr;
  return {{"seconds", *ctx.seconds}};
}

ojson choi(const ChoiTuple& j) {
  ojson blocks = ojson::array();
  for (const Mat& m : j) {
    const ChoiTuple one{m};
    blocks.push_back({{"dim", m.rows()}, {"re", flatten_re(one)}, {"im", flatten_im(one)}});
  }
  return blocks;
}

ojson blocks_json(const WedderburnData& w, bool pairs) {
  ojson a = ojson::array();
  for (const Block& b : w.blocks) {
    ojson e;
    if (pairs && b.label.size() == 2) e["pair"] = {b.label[0] + 1, b.label[1] + 1};
    e["dim"] = b.dim;
    e["mult"] = b.mult;
    a.push_back(std::move(e));
  }
  return a;
}

ojson uniqueness_json(const std::vector<UniquenessResult>& u) {
  ojson a = ojson::array();
  for (std::size_t k = 0; k < u.size(); ++k)
    a.push_back({{"block", k + 1},
                 {"unique", u[k].unique},
                 {"method", u[k].method},
                 {"trials", u[k].trials_run},
                 {"iterations", u[k].iterations}});
  return a;
}

ojson ideals_json(const SilovResult& lattice) {
  ojson a = ojson::array();
  for (const IdealCertificate& c : lattice.ideals)
    a.push_back({{"killed", one_based(c.killed)},
                 {"boundary_ideal", c.result.feasible},
                 {"method", c.result.method}});
  return a;
}

/// Witnesses for non-unique blocks, and the lattice certificates: the left
/// inverse for the chosen ideal and the separations of the failing ones.
/// With `full`, every lattice point is included.
ojson certificates(const SilovResult& dk, const SilovResult& lattice, bool full) {
  ojson c;
  c["kernel_intersection"] = ojson::array();
  for (std::size_t k = 0; k < dk.uniqueness.size(); ++k) {
    const UniquenessResult& u = dk.uniqueness[k];
    if (!u.witness) continue;
    c["kernel_intersection"].push_back({{"block", k + 1},
                                        {"method", u.method},
                                        {"distance", u.witness_distance},
                                        {"choi", choi(*u.witness)}});
  }
  c["lattice"] = ojson::array();
  for (const IdealCertificate& ic : lattice.ideals) {
    const FeasibilityResult& f = ic.result;
    ojson e{{"killed", one_based(ic.killed)}, {"method", f.method}};
    if (f.method == "separation") {
      e["kappa"] = f.kappa;
      e["bound"] = f.bound;
    }
    if (f.point && (full || ic.killed == lattice.killed)) e["choi"] = choi(*f.point);
    c["lattice"].push_back(std::move(e));
  }
  return c;
}

ojson prop_json(const PropResult& p) {
  return {{"value", p.value}, {"chain", p.chain}, {"envelope_dim", p.envelope_dim},
          {"tail", p.tail}};
}

ojson counterexample_json(const std::optional<Counterexample>& c) {
  if (!c) return nullptr;
  return {{"level", c->level}, {"trial", c->trial}, {"gap", c->gap},
          {"image_norm", c->image_norm}};
}

}  // namespace

ojson analysis_report(const SystemAnalysis& a, const InputRef& input,
                      const ReportContext& ctx) {
  ojson j = header("analysis", {input}, ctx);
  j["ambient_dim"] = a.system.ambient;
  j["system_dim"] = a.system.space.dim();
  j["algebra_dim"] = a.wedderburn.algebra.space.dim();
  j["blocks"] = blocks_json(a.wedderburn, false);
  j["boundary_reps"] = one_based(a.dk.boundary_reps);
  j["uniqueness"] = uniqueness_json(a.dk.uniqueness);
  j["ideals"] = ideals_json(a.lattice);
  j["silov_killed"] = {{"kernel_intersection", one_based(a.dk.killed)},
                       {"lattice", one_based(a.lattice.killed)},
                       {"agree", a.routes_agree}};
  if (a.envelope) {
    j["envelope"] = {{"blocks", blocks_json(a.envelope->algebra, false)},
                     {"dim", a.envelope->algebra.algebra.space.dim()}};
  } else {
    j["envelope"] = nullptr;
  }
  j["propagation"] = a.propagation ? prop_json(*a.propagation) : ojson(nullptr);
  j["ambient_chain_nonnormative"] = a.ambient_chain;
  j["silov_quotient_counterexample"] = counterexample_json(a.silov_counterexample);
  j["pass"] = a.pass;
  j["failure"] = a.failure;
  j["timing"] = timing(ctx);
  j["certificates"] = certificates(a.dk, a.lattice, !a.routes_agree);
  return j;
}

ojson tensor_report(const SystemAnalysis& e, const InputRef& ie,
                    const SystemAnalysis& f, const InputRef& iff,
                    const TensorAnalysis& t, const ReportContext& ctx) {
  ojson j = header("tensor", {ie, iff}, ctx);
  const int nb = f.wedderburn.num_blocks();
  const MainTheoremReport& m = t.main;
  j["factors"] = ojson::array();
  for (const SystemAnalysis* s : {&e, &f})
    j["factors"].push_back({{"name", s->system.label},
                            {"silov_killed", one_based(s->dk.killed)},
                            {"boundary_reps", one_based(s->dk.boundary_reps)},
                            {"propagation", s->propagation->value}});
  ojson mt;
  mt["pass"] = m.pass;
  mt["product_blocks"] = blocks_json(t.product_blocks, true);
  mt["product_blocks_ok"] = m.product_blocks_ok;
  mt["uniqueness"] = uniqueness_json(m.product_dk.uniqueness);
  mt["silov_killed"] = {{"kernel_intersection", pair_list(m.product_dk.killed, nb)},
                        {"lattice", pair_list(m.product_lattice.killed, nb)},
                        {"agree", m.routes_agree}};
  mt["tensor_kernel"] = pair_list(m.kernel, nb);
  mt["kernel_subspace_ok"] = m.kernel_subspace_ok;
  mt["inclusion_ok"] = m.inclusion_ok;
  mt["boundary_ideal_ok"] = m.boundary_ideal_ok;
  mt["counterexample"] = counterexample_json(m.counterexample);
  mt["killed_equal"] = m.killed_equal;
  mt["envelope_dims"] = m.envelope_dims;
  mt["expected_envelope_dims"] = m.expected_envelope_dims;
  mt["envelope_ok"] = m.envelope_ok;
  mt["failure"] = m.failure;
  j["main_theorem"] = std::move(mt);

  ojson hp{{"pass", t.hopenwasser.pass}, {"pairs", ojson::array()}};
  for (const auto& [p, unique] : t.hopenwasser.pairs)
    hp["pairs"].push_back({{"pair", {p.first + 1, p.second + 1}}, {"unique", unique}});
  j["hopenwasser"] = std::move(hp);

  const PowerTensorReport& pt = t.power_tensor;
  j["power_tensor"] = {{"pass", pt.pass},
                       {"n_max", pt.n_max},
                       {"tensor_of_powers", pt.tensor_of_powers},
                       {"power_of_tensor", pt.power_of_tensor},
                       {"failed_n", pt.failed_n},
                       {"defect", pt.defect}};
  if (t.prop_max) {
    j["prop_max"] = {{"pass", t.prop_max->pass},
                     {"left", prop_json(t.prop_max->left)},
                     {"right", prop_json(t.prop_max->right)},
                     {"product", prop_json(t.prop_max->product)}};
  } else {
    j["prop_max"] = nullptr;
  }
  j["pass"] = t.pass;
  j["failure"] = t.failure;
  j["timing"] = timing(ctx);
  j["certificates"] = certificates(m.product_dk, m.product_lattice, !m.routes_agree);
  return j;
}

ojson error_report(const std::string& kind, const std::vector<InputRef>& inputs,
                   int exit_code, const std::string& message,
                   const ReportContext& ctx) {
  ojson j = header(kind.c_str(), inputs, ctx);
  j["pass"] = false;
  j["exit_code"] = exit_code;
  j["error"] = message;
  j["timing"] = timing(ctx);
  return j;
}

std::string dump_report(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace cenv
