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


#include "cenv/spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "cenv/errors.hpp"

namespace cenv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& field,
                       const std::string& what) {
  throw InputError(source + ": " + field + ": " + what);
}

int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

RMat read_real_matrix(const json& j, Eigen::Index n, const std::string& source,
                      const std::string& field) {
  if (!j.is_array()) fail(source, field, "expected an array of rows");
  if (static_cast<Eigen::Index>(j.size()) != n) {
    fail(source, field,
         "expected " + std::to_string(n) + " rows, got " + std::to_string(j.size()));
  }
  RMat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      fail(source, rf, "expected a row of " + std::to_string(n) + " numbers");
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number())
        fail(source, rf + "[" + std::to_string(c) + "]", "expected a number");
      m(r, c) = v.get<double>();
      if (!std::isfinite(m(r, c)))
        fail(source, rf + "[" + std::to_string(c) + "]", "not finite");
    }
  }
  return m;
}

json real_rows(const RMat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SystemSpec parse_system_spec(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << source << ": line " << line_of(text, e.byte) << ": " << e.what();
    throw InputError(msg.str());
  }
  if (!doc.is_object()) fail(source, "<root>", "expected an object");
  auto schema = doc.find("schema");
  if (schema == doc.end()) fail(source, "schema", "missing");
  if (!schema->is_string() || schema->get<std::string>() != kSchemaVersion)
    fail(source, "schema", std::string("expected \"") + kSchemaVersion + "\"");

  SystemSpec spec;
  auto name = doc.find("name");
  if (name == doc.end()) fail(source, "name", "missing");
  if (!name->is_string()) fail(source, "name", "expected a string");
  spec.name = name->get<std::string>();

  auto n = doc.find("ambient_dim");
  if (n == doc.end()) fail(source, "ambient_dim", "missing");
  if (!n->is_number_integer() || n->get<std::int64_t>() < 1)
    fail(source, "ambient_dim", "expected a positive integer");
  spec.ambient_dim = n->get<Eigen::Index>();

  auto gens = doc.find("generators");
  if (gens == doc.end()) fail(source, "generators", "missing");
  if (!gens->is_array()) fail(source, "generators", "expected an array");
  for (std::size_t k = 0; k < gens->size(); ++k) {
    const json& g = (*gens)[k];
    const std::string f = "generators[" + std::to_string(k) + "]";
    if (!g.is_object()) fail(source, f, "expected an object with re and im");
    auto re = g.find("re");
    auto im = g.find("im");
    if (re == g.end()) fail(source, f + ".re", "missing");
    if (im == g.end()) fail(source, f + ".im", "missing");
    RMat mr = read_real_matrix(*re, spec.ambient_dim, source, f + ".re");
    RMat mi = read_real_matrix(*im, spec.ambient_dim, source, f + ".im");
    Mat m(spec.ambient_dim, spec.ambient_dim);
    m.real() = mr;
    m.imag() = mi;
    spec.generators.push_back(std::move(m));
  }
  return spec;
}

SystemSpec read_system_spec(const std::filesystem::path& path) {
  return parse_system_spec(read_file(path), path.string());
}

std::string dump_system_spec(const SystemSpec& spec) {
  nlohmann::ordered_json doc;
  doc["schema"] = kSchemaVersion;
  doc["name"] = spec.name;
  doc["ambient_dim"] = spec.ambient_dim;
  doc["generators"] = nlohmann::ordered_json::array();
  for (const Mat& g : spec.generators) {
    nlohmann::ordered_json e;
    e["re"] = real_rows(g.real());
    e["im"] = real_rows(g.imag());
    doc["generators"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

OperatorSystem to_operator_system(const SystemSpec& spec, const Tolerances& tol) {
  return opsys_from_generators(spec.ambient_dim, spec.generators, tol, spec.name);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp.string() + ": cannot write");
    out << contents;
    if (!out.flush()) throw std::runtime_error(tmp.string() + ": write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error(path.string() + ": rename failed: " + ec.message());
  }
}

}  // namespace cenv
