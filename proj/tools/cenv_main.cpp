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


#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cenv/commands.hpp"
#include "cenv/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Silov boundary ideals, C*-envelopes and tensor products of "
               "finite-dimensional operator systems"};
  app.set_version_flag("--version", cenv::kVersion);
  app.require_subcommand(1);

  cenv::CommandOptions opt;
  cenv::PipelineOptions& po = opt.pipeline;
  cenv::Tolerances& tol = po.boundary.tol;
  std::uint64_t seed = 1;
  std::string json_out;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Seed for every randomised step")->capture_default_str();
    sub->add_option("--tol-rank", tol.rank, "Relative rank threshold")->capture_default_str();
    sub->add_option("--tol-psd", tol.psd, "PSD threshold")->capture_default_str();
    sub->add_option("--tol-sep", tol.sep, "Separation for a second extension")
        ->capture_default_str();
    sub->add_option("--tol-norm", tol.norm, "Norm drop counted by the falsifier")
        ->capture_default_str();
    sub->add_option("--falsifier-trials", po.falsifier_trials)->capture_default_str();
    sub->add_option("--uniqueness-trials", po.boundary.uniqueness_trials)
        ->capture_default_str();
    sub->add_option("--max-ambient-product", po.max_ambient_product)->capture_default_str();
    sub->add_option("--json-out", json_out, "Write the JSON report here (- for stdout)");
    sub->add_flag("--quiet", opt.quiet, "No human-readable output");
    sub->add_flag("--timing", opt.timing, "Record wall-clock time in reports");
    sub->add_option("--jobs", opt.jobs, "Worker threads")->capture_default_str();
  };

  std::string path, left, right, dir, out_dir;
  int count = 20;

  CLI::App* analyze = app.add_subcommand("analyze", "Analyse one system");
  analyze->add_option("path", path, "System spec")->required();
  common(analyze);

  CLI::App* tensor = app.add_subcommand("tensor", "Verify the product of two systems");
  tensor->add_option("left", left, "Left system spec")->required();
  tensor->add_option("right", right, "Right system spec")->required();
  common(tensor);

  CLI::App* corpus = app.add_subcommand("corpus", "Generate a seeded corpus");
  corpus->add_option("out_dir", dir, "Output directory")->required();
  corpus->add_option("--count", count, "Number of systems")->capture_default_str();
  common(corpus);

  CLI::App* verify = app.add_subcommand("verify-all", "Run every item of a corpus");
  verify->add_option("corpus_dir", dir, "Corpus directory")->required();
  verify->add_option("--out-dir", out_dir, "Report directory (default corpus_dir/reports)");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cenv::kInput;
  }

  try {
    tol.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cenv::kInput;
  }
  if (opt.jobs < 1 || po.falsifier_trials < 0 || po.boundary.uniqueness_trials < 1) {
    std::cerr << "error: --jobs and --uniqueness-trials must be positive and "
                 "--falsifier-trials nonnegative\n";
    return cenv::kInput;
  }
  po.boundary.seed = seed;
  if (!json_out.empty()) opt.json_out = json_out;
  if (!out_dir.empty()) opt.out_dir = out_dir;

  if (*analyze) return cenv::cmd_analyze(path, opt, std::cout, std::cerr);
  if (*tensor) return cenv::cmd_tensor(left, right, opt, std::cout, std::cerr);
  if (*corpus) return cenv::cmd_corpus(dir, seed, count, opt, std::cout, std::cerr);
  return cenv::cmd_verify_all(dir, opt, std::cout, std::cerr);
}
