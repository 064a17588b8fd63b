// Copyright 2026 The motsim Authors
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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "motsim/errors.hpp"
#include "motsim/experiments.hpp"

#ifndef MOTSIM_GIT_DESCRIBE
#define MOTSIM_GIT_DESCRIBE "unknown"
#endif

namespace motsim {
namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join_dims(const std::vector<int>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) out += 'x';
    out += std::to_string(dims[i]);
  }
  return out;
}

std::string quote(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void add_key(std::vector<std::string>& keys, const std::string& key) {
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
}

}  // namespace

std::string code_version() { return MOTSIM_GIT_DESCRIBE; }

std::string to_csv(const ExperimentResult& result) {
  std::vector<std::string> keys;
  for (const auto& row : result.rows) {
    for (const auto& [k, v] : row.inputs) add_key(keys, k);
  }
  for (const auto& row : result.rows) {
    for (const auto& [k, v] : row.outputs) add_key(keys, k);
  }
  std::ostringstream out;
  out << "label";
  for (const auto& k : keys) out << ',' << k;
  out << ",dims,dt,top_population,flags\n";
  for (const auto& row : result.rows) {
    out << quote(row.label);
    for (const auto& k : keys) {
      out << ',';
      auto match = [&](const auto& kv) { return kv.first == k; };
      auto in = std::find_if(row.inputs.begin(), row.inputs.end(), match);
      if (in != row.inputs.end()) {
        out << format_number(in->second);
        continue;
      }
      auto o = std::find_if(row.outputs.begin(), row.outputs.end(), match);
      if (o != row.outputs.end()) out << format_number(o->second);
    }
    std::string flags;
    for (std::size_t i = 0; i < row.flags.size(); ++i) flags += (i ? "; " : "") + row.flags[i];
    out << ',' << join_dims(row.dims) << ',' << format_number(row.dt) << ',' << format_number(row.top_population)
        << ',' << quote(flags) << '\n';
  }
  return out.str();
}

std::string to_meta_json(const ExperimentResult& result, const ExperimentConfig& config) {
  nlohmann::ordered_json meta;
  meta["experiment"] = result.experiment;
  meta["code_version"] = code_version();
  meta["schema_version"] = kSchemaVersion;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config.values()) params[k] = v;
  meta["params"] = params;
  meta["flagged"] = result.flagged();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json r;
    r["label"] = row.label;
    r["dims"] = row.dims;
    r["dt"] = row.dt;
    r["top_population"] = row.top_population;
    r["runtime_s"] = row.runtime_s;
    r["flags"] = row.flags;
    rows.push_back(std::move(r));
  }
  meta["rows"] = std::move(rows);
  return meta.dump(2) + "\n";
}

void write_outputs(const ExperimentResult& result, const ExperimentConfig& config, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ResourceError("cannot create output directory '" + dir + "': " + ec.message());
  const std::filesystem::path base = std::filesystem::path(dir) / result.experiment;
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ResourceError("cannot write '" + path.string() + "'");
    file << text;
    if (!file) throw ResourceError("write failed for '" + path.string() + "'");
  };
  write(base.string() + ".csv", to_csv(result));
  write(base.string() + ".meta.json", to_meta_json(result, config));
}

}  // namespace motsim
