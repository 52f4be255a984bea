// Copyright 2026 The Authors.
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

#ifndef MATINT_HARNESS_INSTANCE_HPP_
#define MATINT_HARNESS_INSTANCE_HPP_

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "matint/errors.hpp"
#include "matint/families.hpp"
#include "matint/matroid.hpp"
#include "matint/wrappers.hpp"

namespace matint {

using json = nlohmann::json;

// Matroid descriptors are JSON objects keyed by "type":
//   {"type": "uniform", "n", "k"}
//   {"type": "partition", "blocks": [[ids]], "capacities": [c]}
//   {"type": "graphic", "num_vertices", "edges": [[u, v]]}
//   {"type": "linear", "p", "columns": [[entries]]}
//   {"type": "truncated", "inner", "k"}
//   {"type": "free_extended", "inner", "d"}
//   {"type": "restricted", "inner", "subset": [ids]}
struct Instance {
  json generator = json::object();
  std::uint64_t seed = 0;
  json m1;
  json m2;
  std::optional<Weights> weights;
};

struct BuiltInstance {
  MatroidHandle m1;
  MatroidHandle m2;
  std::int64_t n = 0;
};

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

inline std::int64_t as_int(const json& j, const std::string& path,
                           std::int64_t lo = std::numeric_limits<std::int64_t>::min(),
                           std::int64_t hi = std::numeric_limits<std::int64_t>::max()) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < lo || v > hi) {
    throw SchemaError(path, "value " + std::to_string(v) + " out of range [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v;
}

inline const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

inline std::vector<std::int64_t> int_list(const json& j, const std::string& path,
                                          std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  const json& arr = as_array(j, path);
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(as_int(arr[i], path + "/" + std::to_string(i), lo, hi));
  }
  return out;
}

// Rethrows constructor failures with the descriptor path attached.
template <typename F>
MatroidHandle at_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(path, e.what());
  }
}

constexpr std::int64_t kMaxGround = std::int64_t{1} << 26;

}  // namespace detail

inline MatroidHandle build_matroid(const json& d, const std::string& path = "") {
  using detail::as_int;
  using detail::field;
  using detail::int_list;
  const json& type = field(d, "type", path);
  if (!type.is_string()) throw SchemaError(path + "/type", "expected a string");
  const auto t = type.get<std::string>();
  if (t == "uniform") {
    const auto n = as_int(field(d, "n", path), path + "/n", 0, detail::kMaxGround);
    const auto k = as_int(field(d, "k", path), path + "/k", 0);
    return detail::at_path(path, [&] { return make_uniform(n, k); });
  }
  if (t == "partition") {
    const std::string bp = path + "/blocks";
    const json& blocks = detail::as_array(field(d, "blocks", path), bp);
    std::vector<std::vector<ElementId>> parts;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto ids = int_list(blocks[i], bp + "/" + std::to_string(i), 0,
                                detail::kMaxGround - 1);
      parts.emplace_back(ids.begin(), ids.end());
    }
    const auto caps = int_list(field(d, "capacities", path), path + "/capacities", 0,
                               std::numeric_limits<std::int64_t>::max());
    return detail::at_path(path, [&] { return make_partition(parts, caps); });
  }
  if (t == "graphic") {
    const auto nv = as_int(field(d, "num_vertices", path), path + "/num_vertices", 0,
                           std::numeric_limits<std::int32_t>::max());
    const std::string ep = path + "/edges";
    const json& edges = detail::as_array(field(d, "edges", path), ep);
    std::vector<GraphicMatroid::Edge> list;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string p = ep + "/" + std::to_string(i);
      const auto uv = int_list(edges[i], p, 0, nv - 1);
      if (uv.size() != 2) throw SchemaError(p, "an edge needs exactly 2 endpoints");
      list.emplace_back(static_cast<std::int32_t>(uv[0]), static_cast<std::int32_t>(uv[1]));
    }
    return detail::at_path(path, [&] {
      return make_graphic(static_cast<std::int32_t>(nv), list);
    });
  }
  if (t == "linear") {
    const auto p = as_int(field(d, "p", path), path + "/p", 2, std::int64_t{1} << 31);
    const std::string cp = path + "/columns";
    const json& cols = detail::as_array(field(d, "columns", path), cp);
    std::vector<std::vector<std::int64_t>> columns;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      columns.push_back(int_list(cols[i], cp + "/" + std::to_string(i),
                                 std::numeric_limits<std::int64_t>::min(),
                                 std::numeric_limits<std::int64_t>::max()));
    }
    return detail::at_path(path, [&] { return make_linear(p, columns); });
  }
  if (t == "truncated") {
    auto inner = build_matroid(field(d, "inner", path), path + "/inner");
    const auto k = as_int(field(d, "k", path), path + "/k", 0);
    return detail::at_path(path, [&] { return truncate(inner, k); });
  }
  if (t == "free_extended") {
    auto inner = build_matroid(field(d, "inner", path), path + "/inner");
    const auto dd = as_int(field(d, "d", path), path + "/d", 0, detail::kMaxGround);
    return detail::at_path(path, [&] { return free_extend(inner, dd); });
  }
  if (t == "restricted") {
    auto inner = build_matroid(field(d, "inner", path), path + "/inner");
    const auto ids = int_list(field(d, "subset", path), path + "/subset", 0,
                              detail::kMaxGround - 1);
    return detail::at_path(path, [&] {
      return restrict_to(inner, std::vector<ElementId>(ids.begin(), ids.end()));
    });
  }
  throw SchemaError(path + "/type", "unknown matroid type '" + t + "'");
}

inline json instance_to_json(const Instance& inst) {
  json j;
  j["format"] = "matint-instance";
  j["version"] = 1;
  j["generator"] = inst.generator;
  j["seed"] = inst.seed;
  j["m1"] = inst.m1;
  j["m2"] = inst.m2;
  if (inst.weights) j["weights"] = *inst.weights;
  return j;
}

inline Instance instance_from_json(const json& j) {
  using detail::field;
  if (!j.is_object()) throw SchemaError("", "expected an object");
  const json& format = field(j, "format", "");
  if (format != "matint-instance") throw SchemaError("/format", "expected \"matint-instance\"");
  detail::as_int(field(j, "version", ""), "/version", 1, 1);
  Instance inst;
  if (auto it = j.find("generator"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("/generator", "expected an object");
    inst.generator = *it;
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) throw SchemaError("/seed", "expected an unsigned integer");
    inst.seed = it->get<std::uint64_t>();
  }
  inst.m1 = field(j, "m1", "");
  inst.m2 = field(j, "m2", "");
  if (auto it = j.find("weights"); it != j.end()) {
    inst.weights = detail::int_list(*it, "/weights", 0, std::numeric_limits<std::int64_t>::max());
  }
  return inst;
}

// Builds both matroids and checks that ground sets and weights agree.
inline BuiltInstance build_instance(const Instance& inst) {
  BuiltInstance b;
  b.m1 = build_matroid(inst.m1, "/m1");
  b.m2 = build_matroid(inst.m2, "/m2");
  b.n = b.m1->ground_size();
  if (b.m2->ground_size() != b.n) {
    throw SchemaError("/m2", "ground size " + std::to_string(b.m2->ground_size()) +
                                 " differs from /m1 ground size " + std::to_string(b.n));
  }
  if (inst.weights && static_cast<std::int64_t>(inst.weights->size()) != b.n) {
    throw SchemaError("/weights", "expected " + std::to_string(b.n) + " weights, got " +
                                      std::to_string(inst.weights->size()));
  }
  return b;
}

// FNV-1a over the canonical dump, as 16 hex digits.
inline std::string instance_hash(const Instance& inst) {
  const std::string text = instance_to_json(inst).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", what + " is not valid JSON: " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

inline Instance load_instance(const std::string& path) {
  return instance_from_json(parse_json_text(read_file(path), path));
}

}  // namespace matint

#endif  // MATINT_HARNESS_INSTANCE_HPP_
