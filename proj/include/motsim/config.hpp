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

#pragma once

#include <map>
#include <string>
#include <vector>

namespace motsim {

inline constexpr int kSchemaVersion = 1;

/// Flat `key = value` configuration. Every key has a documented default;
/// unknown keys and unsupported schema versions are rejected with ConfigError.
class ExperimentConfig {
 public:
  /// Defaults for the given experiment tag.
  explicit ExperimentConfig(const std::string& experiment = "table1");

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  std::string serialize() const;

  const std::string& experiment() const { return experiment_; }
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<int> get_ints(const std::string& key) const;
  std::vector<std::string> get_strings(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  bool operator==(const ExperimentConfig& other) const {
    return experiment_ == other.experiment_ && values_ == other.values_;
  }

  static const std::vector<std::string>& experiments();

 private:
  std::string experiment_;
  std::map<std::string, std::string> values_;
};

}  // namespace motsim
