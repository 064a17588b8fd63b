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

#include "motsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "motsim/errors.hpp"

namespace motsim {
namespace {

enum class Kind { real, integer, boolean, text, reals, integers, texts };

struct KeySpec {
  Kind kind;
  std::string fallback;
};

const std::map<std::string, KeySpec>& registry() {
  static const std::map<std::string, KeySpec> keys = {
      {"seed", {Kind::integer, "12345"}},
      {"out_dir", {Kind::text, "results"}},
      {"threads", {Kind::integer, "0"}},
      {"strict", {Kind::boolean, "false"}},
      {"dims", {Kind::integers, ""}},
      {"leakage", {Kind::real, "1e-6"}},
      {"exact_trig", {Kind::boolean, "false"}},
      {"jumps", {Kind::boolean, "false"}},
      {"ntraj", {Kind::integer, "1"}},
      {"integrator.method", {Kind::text, "rk4"}},
      {"integrator.steps_per_period", {Kind::integer, "40"}},
      {"integrator.dt", {Kind::real, "0"}},
      {"integrator.samples", {Kind::integer, "200"}},
      {"integrator.rtol", {Kind::real, "1e-9"}},
      {"integrator.atol", {Kind::real, "1e-11"}},
      {"table1.rows", {Kind::integers, "1,2,3,4,5,6,7,8,9"}},
      {"table1.eps2_over_delta", {Kind::real, "0.1"}},
      {"table1.phi", {Kind::real, "-1.5707963267948966"}},
      {"table1.mode_dim", {Kind::integer, "48"}},
      {"cavity.kappa", {Kind::real, "1"}},
      {"cavity.nu", {Kind::real, "10"}},
      {"cavity.delta_ca", {Kind::real, "10"}},
      {"cavity.g0_sq_over_det", {Kind::real, "0.2"}},
      {"cavity.phi", {Kind::real, "0"}},
      {"fig.exchange", {Kind::real, "0.1"}},
      {"fig.alpha", {Kind::real, "3.1622776601683795"}},
      {"fig.etas", {Kind::reals, "0.1,0.15"}},
      {"fig.duration", {Kind::real, "3"}},
      {"fig.motion_dim", {Kind::integer, "40"}},
      {"fig.cavity_dim", {Kind::integer, "5"}},
      {"transfer.rows", {Kind::integers, ""}},
      {"transfer.window", {Kind::real, "8"}},
      {"transfer.peak_amplitude", {Kind::real, "1"}},
      {"transfer.motion_padding", {Kind::integer, "8"}},
      {"transfer.cavity_dim", {Kind::integer, "4"}},
      {"cascade.gamma", {Kind::real, "1"}},
      {"cascade.windows", {Kind::reals, "2,4,6,8"}},
      {"cascade.inputs", {Kind::texts, "fock1,fock5,coherent2"}},
      {"deloc.alpha", {Kind::real, "3.1622776601683795"}},
      {"deloc.n", {Kind::integer, "1"}},
      {"deloc.mode_dim", {Kind::integer, "36"}},
      {"collective.cases", {Kind::texts, "mix0,sq0,mixR,sqR"}},
      {"collective.nu_x", {Kind::real, "1"}},
      {"collective.nu_z", {Kind::real, "3"}},
      {"collective.eta_x", {Kind::real, "0.1"}},
      {"collective.eta_z", {Kind::real, "0.1"}},
      {"collective.alpha", {Kind::real, "1"}},
      {"collective.beta", {Kind::real, "1"}},
      {"collective.eps2_over_delta", {Kind::real, "0.1"}},
      {"collective.thetas", {Kind::reals, "0,1.0471975511965976"}},
      {"collective.mode_dim", {Kind::integer, "12"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': '" + text + "' is not a number");
  return v;
}

long to_long(const std::string& key, const std::string& text) {
  long v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': '" + text + "' is not an integer");
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "on" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "off" || text == "0" || text == "no") return false;
  throw ConfigError("key '" + key + "': '" + text + "' is not a boolean");
}

void validate(const std::string& key, const std::string& value) {
  const auto it = registry().find(key);
  if (it == registry().end()) throw ConfigError("unknown configuration key '" + key + "'");
  switch (it->second.kind) {
    case Kind::real: to_double(key, value); break;
    case Kind::integer: to_long(key, value); break;
    case Kind::boolean: to_bool(key, value); break;
    case Kind::reals:
      for (const auto& item : split_list(value)) to_double(key, item);
      break;
    case Kind::integers:
      for (const auto& item : split_list(value)) to_long(key, item);
      break;
    case Kind::text:
    case Kind::texts: break;
  }
}

}  // namespace

const std::vector<std::string>& ExperimentConfig::experiments() {
  static const std::vector<std::string> tags = {"table1", "fig4",          "fig5",           "table2",
                                                "table3", "table4",        "table5",         "cascade_ideal",
                                                "delocalized", "collective_demo"};
  return tags;
}

ExperimentConfig::ExperimentConfig(const std::string& experiment) : experiment_(experiment) {
  const auto& tags = experiments();
  if (std::find(tags.begin(), tags.end(), experiment) == tags.end()) {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  for (const auto& [key, spec] : registry()) values_[key] = spec.fallback;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  validate(key, value);
  values_[key] = value;
}

bool ExperimentConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string ExperimentConfig::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown configuration key '" + key + "'");
  return it->second;
}

double ExperimentConfig::get_double(const std::string& key) const { return to_double(key, get_string(key)); }

long ExperimentConfig::get_int(const std::string& key) const { return to_long(key, get_string(key)); }

bool ExperimentConfig::get_bool(const std::string& key) const { return to_bool(key, get_string(key)); }

std::vector<double> ExperimentConfig::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(get_string(key))) out.push_back(to_double(key, item));
  return out;
}

std::vector<int> ExperimentConfig::get_ints(const std::string& key) const {
  std::vector<int> out;
  for (const auto& item : split_list(get_string(key))) out.push_back(static_cast<int>(to_long(key, item)));
  return out;
}

std::vector<std::string> ExperimentConfig::get_strings(const std::string& key) const {
  return split_list(get_string(key));
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> entries;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (entries.count(key)) throw ConfigError("duplicate key '" + key + "'");
    entries[key] = value;
  }
  const auto version = entries.find("schema_version");
  if (version == entries.end()) throw ConfigError("missing schema_version");
  if (to_long("schema_version", version->second) != kSchemaVersion) {
    throw ConfigError("unsupported schema_version " + version->second);
  }
  const auto tag = entries.find("experiment");
  if (tag == entries.end()) throw ConfigError("missing experiment");
  ExperimentConfig config(tag->second);
  for (const auto& [key, value] : entries) {
    if (key == "schema_version" || key == "experiment") continue;
    config.set(key, value);
  }
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse(buffer.str());
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out << "schema_version = " << kSchemaVersion << "\n";
  out << "experiment = " << experiment_ << "\n";
  for (const auto& [key, value] : values_) out << key << " = " << value << "\n";
  return out.str();
}

}  // namespace motsim
