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


#include "cenv/commands.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cenv/corpus.hpp"
#include "cenv/errors.hpp"
#include "cenv/parallel.hpp"
#include "cenv/report.hpp"
#include "cenv/spec_io.hpp"

namespace cenv {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

int run_guarded(const std::function<int()>& body, std::string& message) {
  try {
    return body();
  } catch (const InputError& e) {
    message = e.what();
    return kInput;
  } catch (const VerificationError& e) {
    message = e.what();
    return kFailure;
  } catch (const InconclusiveError& e) {
    message = e.what();
    return kInconclusive;
  } catch (const std::exception& e) {
    message = std::string("internal error: ") + e.what();
    return kFailure;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

struct LoadedSystem {
  OperatorSystem system;
  InputRef ref;
};

LoadedSystem load(const fs::path& path, const Tolerances& tol) {
  const std::string text = read_file(path);
  SystemSpec spec = parse_system_spec(text, path.string());
  LoadedSystem l;
  l.system = to_operator_system(spec, tol);
  l.ref.name = spec.name;
  l.ref.digest = fnv1a_hex(text);
  return l;
}

ReportContext context(const CommandOptions& opt, Clock::time_point t0) {
  ReportContext ctx;
  ctx.options = opt.pipeline;
  if (opt.timing)
    ctx.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return ctx;
}

void emit(const ojson& report, const CommandOptions& opt, std::ostream& out) {
  if (!opt.json_out) return;
  const std::string text = dump_report(report);
  if (*opt.json_out == "-") {
    out << text;
  } else {
    write_file_atomic(*opt.json_out, text);
  }
}

std::string set_str(const BlockSet& s) {
  std::ostringstream o;
  o << "{";
  for (std::size_t k = 0; k < s.size(); ++k) o << (k ? "," : "") << s[k] + 1;
  o << "}";
  return o.str();
}

std::string pair_str(const BlockSet& s, int right_blocks) {
  std::ostringstream o;
  o << "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto [i, j] = pair_of(s[k], right_blocks);
    o << (k ? "," : "") << "(" << i + 1 << "," << j + 1 << ")";
  }
  o << "}";
  return o.str();
}

std::string blocks_str(const WedderburnData& w) {
  std::ostringstream o;
  for (int k = 0; k < w.num_blocks(); ++k)
    o << (k ? " " : "") << "(" << w.blocks[static_cast<std::size_t>(k)].dim << ","
      << w.blocks[static_cast<std::size_t>(k)].mult << ")";
  return o.str();
}

void print_analysis(const SystemAnalysis& a, std::ostream& out) {
  out << a.system.label << ": ambient " << a.system.ambient << ", dim E "
      << a.system.space.dim() << ", dim C*(E) " << a.wedderburn.algebra.space.dim()
      << "\n";
  out << "  blocks (d,m): " << blocks_str(a.wedderburn) << "\n";
  out << "  boundary representations: " << set_str(a.dk.boundary_reps) << "\n";
  out << "  Silov killed: kernel-intersection " << set_str(a.dk.killed)
      << ", lattice " << set_str(a.lattice.killed)
      << (a.routes_agree ? " (agree)" : " (DISAGREE)") << "\n";
  if (a.envelope)
    out << "  envelope blocks: " << blocks_str(a.envelope->algebra) << "\n";
  if (a.propagation) {
    out << "  propagation number " << a.propagation->value << ", chain";
    for (auto d : a.propagation->chain) out << " " << d;
    out << "\n";
  }
  out << "  " << (a.pass ? "PASS" : "FAIL: " + a.failure) << "\n";
}

void print_tensor(const SystemAnalysis& e, const SystemAnalysis& f,
                  const TensorAnalysis& t, std::ostream& out) {
  const int nb = f.wedderburn.num_blocks();
  const MainTheoremReport& m = t.main;
  out << e.system.label << " (x) " << f.system.label << "\n";
  out << "  Silov killed: " << pair_str(m.product_dk.killed, nb)
      << ", tensor kernel " << pair_str(m.kernel, nb) << "\n";
  out << "  main theorem " << (m.pass ? "pass" : "FAIL") << ", hopenwasser "
      << (t.hopenwasser.pass ? "pass" : "FAIL") << ", power tensor "
      << (t.power_tensor.pass ? "pass" : "FAIL") << ", prop max ";
  if (t.prop_max) {
    out << (t.prop_max->pass ? "pass" : "FAIL") << " (" << t.prop_max->left.value
        << ", " << t.prop_max->right.value << " -> " << t.prop_max->product.value << ")";
  } else {
    out << "skipped";
  }
  out << "\n  " << (t.pass ? "PASS" : "FAIL: " + t.failure) << "\n";
}

int analysis_code(const SystemAnalysis& a) { return a.pass ? kOk : kFailure; }

}  // namespace

int cmd_analyze(const fs::path& path, const CommandOptions& opt, std::ostream& out,
                std::ostream& err) {
  const auto t0 = Clock::now();
  InputRef ref{path.filename().string(), ""};
  std::string message;
  const int code = run_guarded(
      [&] {
        LoadedSystem l = load(path, opt.pipeline.boundary.tol);
        ref = l.ref;
        PipelineOptions po = opt.pipeline;
        po.jobs = opt.jobs;
        SystemAnalysis a = analyze_system(l.system, po);
        if (!opt.quiet) print_analysis(a, out);
        emit(analysis_report(a, ref, context(opt, t0)), opt, out);
        return analysis_code(a);
      },
      message);
  if (!message.empty()) {
    err << "error: " << message << "\n";
    emit(error_report("analysis", {ref}, code, message, context(opt, t0)), opt, out);
  }
  return code;
}

int cmd_tensor(const fs::path& left, const fs::path& right, const CommandOptions& opt,
               std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  std::vector<InputRef> refs{{left.filename().string(), ""},
                             {right.filename().string(), ""}};
  std::string message;
  const int code = run_guarded(
      [&] {
        const Tolerances& tol = opt.pipeline.boundary.tol;
        LoadedSystem le = load(left, tol);
        LoadedSystem lf = load(right, tol);
        refs = {le.ref, lf.ref};
        const Eigen::Index nm = le.system.ambient * lf.system.ambient;
        if (nm > opt.pipeline.max_ambient_product)
          throw InputError("product ambient " + std::to_string(nm) +
                           " exceeds the cap of " +
                           std::to_string(opt.pipeline.max_ambient_product));
        PipelineOptions po = opt.pipeline;
        po.jobs = opt.jobs;
        SystemAnalysis e = analyze_system(le.system, po);
        SystemAnalysis f = analyze_system(lf.system, po);
        TensorAnalysis t = analyze_tensor(e, f, po);
        if (!opt.quiet) print_tensor(e, f, t, out);
        emit(tensor_report(e, le.ref, f, lf.ref, t, context(opt, t0)), opt, out);
        return t.pass ? kOk : kFailure;
      },
      message);
  if (!message.empty()) {
    err << "error: " << message << "\n";
    emit(error_report("tensor", refs, code, message, context(opt, t0)), opt, out);
  }
  return code;
}

int cmd_corpus(const fs::path& out_dir, std::uint64_t seed, int count,
               const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  if (count < 0) {
    err << "error: count must be nonnegative\n";
    return kInput;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    err << "error: " << out_dir.string() << ": " << ec.message() << "\n";
    return kInput;
  }
  const std::vector<CorpusEntry> entries = corpus_entries(seed, count);
  ojson manifest;
  manifest["schema"] = kSchemaVersion;
  manifest["version"] = kVersion;
  manifest["seed"] = seed;
  manifest["count"] = count;
  manifest["systems"] = ojson::array();
  try {
    for (const CorpusEntry& e : entries) {
      write_file_atomic(out_dir / e.file, dump_system_spec(e.spec));
      manifest["systems"].push_back({{"file", e.file},
                                     {"name", e.spec.name},
                                     {"family", e.family},
                                     {"seed", e.seed}});
    }
    manifest["pairs"] = ojson::array();
    for (const auto& [a, b] : corpus_pairs(entries))
      manifest["pairs"].push_back({{"left", a}, {"right", b}});
    write_file_atomic(out_dir / "manifest.json", dump_report(manifest));
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kInput;
  }
  if (!opt.quiet)
    out << "wrote " << entries.size() << " systems and manifest.json to "
        << out_dir.string() << "\n";
  return kOk;
}

namespace {

struct Manifest {
  std::vector<std::string> files;
  std::vector<std::pair<std::string, std::string>> pairs;
};

Manifest read_manifest(const fs::path& dir) {
  const fs::path path = dir / "manifest.json";
  if (!fs::exists(path)) throw InputError(path.string() + ": missing manifest");
  const std::string text = read_file(path);
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  Manifest m;
  try {
    if (doc.at("schema").get<std::string>() != kSchemaVersion)
      throw InputError(path.string() + ": schema: expected \"v1\"");
    for (const auto& s : doc.at("systems")) m.files.push_back(s.at("file").get<std::string>());
    if (doc.contains("pairs"))
      for (const auto& p : doc.at("pairs"))
        m.pairs.emplace_back(p.at("left").get<std::string>(),
                             p.at("right").get<std::string>());
  } catch (const ojson::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return m;
}

std::string stem_of(const std::string& file) { return fs::path(file).stem().string(); }

struct ItemResult {
  std::string item;
  std::string kind;
  std::string report;
  int code = kOk;
  std::string detail;
};

}  // namespace

int cmd_verify_all(const fs::path& corpus_dir, const CommandOptions& opt,
                   std::ostream& out, std::ostream& err) {
  Manifest manifest;
  std::string message;
  int code = run_guarded(
      [&] {
        manifest = read_manifest(corpus_dir);
        return kOk;
      },
      message);
  if (code != kOk) {
    err << "error: " << message << "\n";
    return code;
  }
  const fs::path out_dir = opt.out_dir ? *opt.out_dir : corpus_dir / "reports";
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    err << "error: " << out_dir.string() << ": " << ec.message() << "\n";
    return kInput;
  }
  PipelineOptions po = opt.pipeline;
  po.jobs = 1;

  const std::size_t nf = manifest.files.size();
  std::vector<std::optional<SystemAnalysis>> analyses(nf);
  std::vector<InputRef> refs(nf);
  std::vector<ItemResult> file_results(nf);
  parallel_for(nf, opt.jobs, [&](std::size_t k) {
    const auto t0 = Clock::now();
    const std::string& file = manifest.files[k];
    ItemResult& r = file_results[k];
    r.item = file;
    r.kind = "analysis";
    r.report = stem_of(file) + ".report.json";
    refs[k] = {file, ""};
    std::string msg;
    r.code = run_guarded(
        [&] {
          LoadedSystem l = load(corpus_dir / file, po.boundary.tol);
          refs[k] = l.ref;
          SystemAnalysis a = analyze_system(l.system, po);
          write_file_atomic(out_dir / r.report,
                            dump_report(analysis_report(a, l.ref, context(opt, t0))));
          if (!a.pass) r.detail = a.failure;
          const int c = analysis_code(a);
          analyses[k] = std::move(a);
          return c;
        },
        msg);
    if (!msg.empty()) {
      r.detail = msg;
      write_file_atomic(out_dir / r.report,
                        dump_report(error_report("analysis", {refs[k]}, r.code, msg,
                                                 context(opt, t0))));
    }
  });

  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < nf; ++k) index[manifest.files[k]] = k;
  const std::size_t np = manifest.pairs.size();
  std::vector<ItemResult> pair_results(np);
  parallel_for(np, opt.jobs, [&](std::size_t p) {
    const auto t0 = Clock::now();
    const auto& [a, b] = manifest.pairs[p];
    ItemResult& r = pair_results[p];
    r.item = a + " x " + b;
    r.kind = "tensor";
    r.report = "tensor__" + stem_of(a) + "__" + stem_of(b) + ".report.json";
    std::vector<InputRef> in{{a, ""}, {b, ""}};
    std::string msg;
    r.code = run_guarded(
        [&] {
          auto ia = index.find(a);
          auto ib = index.find(b);
          if (ia == index.end() || ib == index.end())
            throw InputError("pair refers to a file not in the manifest");
          in = {refs[ia->second], refs[ib->second]};
          const auto& ea = analyses[ia->second];
          const auto& eb = analyses[ib->second];
          if (!ea || !eb) throw VerificationError("a factor failed to load or analyse");
          const Eigen::Index nm = ea->system.ambient * eb->system.ambient;
          if (nm > po.max_ambient_product)
            throw InputError("product ambient " + std::to_string(nm) +
                             " exceeds the cap of " +
                             std::to_string(po.max_ambient_product));
          TensorAnalysis t = analyze_tensor(*ea, *eb, po);
          write_file_atomic(out_dir / r.report,
                            dump_report(tensor_report(*ea, in[0], *eb, in[1], t,
                                                      context(opt, t0))));
          if (!t.pass) r.detail = t.failure;
          return t.pass ? kOk : kFailure;
        },
        msg);
    if (!msg.empty()) {
      r.detail = msg;
      write_file_atomic(out_dir / r.report,
                        dump_report(error_report("tensor", in, r.code, msg,
                                                 context(opt, t0))));
    }
  });

  std::vector<ItemResult> all = file_results;
  all.insert(all.end(), pair_results.begin(), pair_results.end());
  int failures = 0;
  bool any_input = false, any_failure = false, any_inconclusive = false;
  ojson summary;
  summary["schema"] = kSchemaVersion;
  summary["version"] = kVersion;
  summary["seed"] = po.boundary.seed;
  summary["items"] = ojson::array();
  for (const ItemResult& r : all) {
    if (r.code != kOk) ++failures;
    any_input |= r.code == kInput;
    any_failure |= r.code == kFailure;
    any_inconclusive |= r.code == kInconclusive;
    summary["items"].push_back({{"item", r.item},
                                {"kind", r.kind},
                                {"exit_code", r.code},
                                {"report", r.report},
                                {"detail", r.detail}});
  }
  summary["failures"] = failures;
  write_file_atomic(out_dir / "summary.json", dump_report(summary));

  if (!opt.quiet) {
    std::size_t width = 4;
    for (const ItemResult& r : all) width = std::max(width, r.item.size());
    out << std::left << std::setw(static_cast<int>(width) + 2) << "item"
        << std::setw(10) << "kind" << "result\n";
    for (const ItemResult& r : all) {
      out << std::setw(static_cast<int>(width) + 2) << r.item << std::setw(10) << r.kind;
      if (r.code == kOk) {
        out << "PASS\n";
      } else {
        out << "FAIL(" << r.code << ") " << r.detail << "\n";
      }
    }
    out << failures << " failure(s) in " << all.size() << " item(s)\n";
  }
  for (const ItemResult& r : all)
    if (r.code != kOk) err << r.item << ": " << r.detail << "\n";
  if (any_input) return kInput;
  if (any_failure) return kFailure;
  if (any_inconclusive) return kInconclusive;
  return kOk;
}

}  // namespace cenv
