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


#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cenv/commands.hpp"
#include "cenv/corpus.hpp"
#include "cenv/errors.hpp"
#include "cenv/spec_io.hpp"

using namespace cenv;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("cenv_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string error_of(const std::string& text) {
  try {
    parse_system_spec(text, "t.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

CommandOptions quiet_options() {
  CommandOptions o;
  o.quiet = true;
  o.pipeline.falsifier_trials = 100;
  return o;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("spec round trip") {
  SystemSpec s = state_sum_spec(2, cplx(0.25, -0.125), "x");
  SystemSpec back = parse_system_spec(dump_system_spec(s));
  CHECK(back.name == "x");
  CHECK(back.ambient_dim == 3);
  REQUIRE(back.generators.size() == 1);
  CHECK((back.generators[0] - s.generators[0]).norm() == 0.0);
}

TEST_CASE("spec diagnostics name the line or the field") {
  CHECK(error_of("{\n\"schema\": \"v1\",\n\"name\": }").find("line 3") != std::string::npos);
  CHECK(error_of(R"({"name":"a","ambient_dim":1,"generators":[]})").find("schema") !=
        std::string::npos);
  CHECK(error_of(R"({"schema":"v2","name":"a","ambient_dim":1,"generators":[]})")
            .find("schema") != std::string::npos);
  CHECK(error_of(R"({"schema":"v1","name":"a","ambient_dim":0,"generators":[]})")
            .find("ambient_dim") != std::string::npos);
  const std::string bad_row =
      R"({"schema":"v1","name":"a","ambient_dim":2,"generators":[{"re":[[0,1],[0]],"im":[[0,0],[0,0]]}]})";
  CHECK(error_of(bad_row).find("generators[0].re[1]") != std::string::npos);
  const std::string no_im =
      R"({"schema":"v1","name":"a","ambient_dim":1,"generators":[{"re":[[1]]}]})";
  CHECK(error_of(no_im).find("generators[0].im") != std::string::npos);
  CHECK(parse_system_spec(R"({"schema":"v1","name":"a","ambient_dim":2,"generators":[]})")
            .generators.empty());
}

TEST_CASE("digest") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("corpus generation is deterministic") {
  fs::path a = scratch("corpus_a"), b = scratch("corpus_b");
  std::ostringstream out, err;
  REQUIRE(cmd_corpus(a, 42, 10, quiet_options(), out, err) == kOk);
  REQUIRE(cmd_corpus(b, 42, 10, quiet_options(), out, err) == kOk);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    CHECK(read_file(entry.path()) == read_file(b / entry.path().filename()));
  }
  CHECK(files == 11);
  fs::path z = scratch("corpus_zero");
  REQUIRE(cmd_corpus(z, 42, 0, quiet_options(), out, err) == kOk);
  CHECK(std::distance(fs::directory_iterator(z), fs::directory_iterator{}) == 1);
  CHECK(fs::exists(z / "manifest.json"));
}

TEST_CASE("the shipped corpus is the seed-1 corpus") {
  const fs::path shipped = fs::path(CENV_SOURCE_DIR) / "corpus";
  fs::path fresh = scratch("corpus_fresh");
  std::ostringstream out, err;
  REQUIRE(cmd_corpus(fresh, 1, 20, quiet_options(), out, err) == kOk);
  for (const auto& entry : fs::directory_iterator(fresh)) {
    CAPTURE(entry.path().filename().string());
    CHECK(read_file(entry.path()) == read_file(shipped / entry.path().filename()));
  }
}

TEST_CASE("corpus members have ambient at most 4") {
  for (const CorpusEntry& e : corpus_entries(7, 40)) CHECK(e.spec.ambient_dim <= 4);
}

TEST_CASE("analyze writes the report") {
  fs::path dir = scratch("analyze");
  write_file_atomic(dir / "state_sum.json", dump_system_spec(state_sum_example()));
  CommandOptions o = quiet_options();
  o.json_out = dir / "report.json";
  std::ostringstream out, err;
  REQUIRE(cmd_analyze(dir / "state_sum.json", o, out, err) == kOk);
  auto j = nlohmann::json::parse(read_file(dir / "report.json"));
  CHECK(j["schema"] == "v1");
  CHECK(j["silov_killed"]["kernel_intersection"] == nlohmann::json::array({2}));
  CHECK(j["silov_killed"]["agree"] == true);
  CHECK(j["propagation"]["value"] == 2);
  CHECK(j["envelope"]["blocks"][0]["dim"] == 2);
  CHECK(j["timing"].is_null());
  CHECK(j["seed"] == 1);
  CHECK(j["options"]["falsifier_trials"] == 100);
  CHECK(j["certificates"]["kernel_intersection"].size() == 1);
}

TEST_CASE("analyze exit codes") {
  fs::path dir = scratch("codes");
  std::ostringstream out, err;
  CHECK(cmd_analyze(dir / "missing.json", quiet_options(), out, err) == kInput);
  write_file_atomic(dir / "bad.json", "{ not json");
  CHECK(cmd_analyze(dir / "bad.json", quiet_options(), out, err) == kInput);
  CHECK(err.str().find("bad.json") != std::string::npos);
  write_file_atomic(dir / "m2.json", dump_system_spec(full_matrix_spec(2)));
  CommandOptions capped = quiet_options();
  capped.pipeline.max_ambient_product = 3;
  CHECK(cmd_tensor(dir / "m2.json", dir / "m2.json", capped, out, err) == kInput);
  CHECK(cmd_tensor(dir / "m2.json", dir / "m2.json", quiet_options(), out, err) == kOk);
}

TEST_CASE("guarded runs map exceptions to exit codes") {
  std::string m;
  CHECK(run_guarded([] { return 0; }, m) == kOk);
  CHECK(run_guarded([]() -> int { throw InputError("x"); }, m) == kInput);
  CHECK(run_guarded([]() -> int { throw VerificationError("x"); }, m) == kFailure);
  CHECK(run_guarded([]() -> int { throw InconclusiveError("x"); }, m) == kInconclusive);
  CHECK(m == "x");
}

TEST_CASE("verify-all on small corpora") {
  std::ostringstream out, err;
  fs::path empty = scratch("empty");
  CHECK(cmd_verify_all(empty, quiet_options(), out, err) == kInput);
  CHECK(err.str().find("missing manifest") != std::string::npos);

  fs::path dir = scratch("small");
  REQUIRE(cmd_corpus(dir, 1, 3, quiet_options(), out, err) == kOk);
  CHECK(cmd_verify_all(dir, quiet_options(), out, err) == kOk);
  CHECK(fs::exists(dir / "reports" / "summary.json"));
  CHECK(fs::exists(dir / "reports" / "tensor__full_M2__jordan_M2.report.json"));

  write_file_atomic(dir / "jordan_M2.json", "{\"schema\": \"v1\", \"name\": 3}");
  std::ostringstream err2;
  CHECK(cmd_verify_all(dir, quiet_options(), out, err2) == kInput);
  CHECK(err2.str().find("jordan_M2.json") != std::string::npos);
}

}  // TEST_SUITE
