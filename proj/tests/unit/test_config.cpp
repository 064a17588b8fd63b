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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "motsim/config.hpp"
#include "motsim/errors.hpp"

using namespace motsim;

TEST(Config, DefaultsPerExperiment) {
  const ExperimentConfig c("table1");
  EXPECT_EQ(c.experiment(), "table1");
  EXPECT_EQ(c.get_int("integrator.steps_per_period"), 40);
  EXPECT_EQ(c.get_ints("table1.rows").size(), 9u);
  EXPECT_FALSE(c.get_bool("jumps"));
  EXPECT_THROW(ExperimentConfig("table9"), ConfigError);
}

TEST(Config, SerializeRoundTrip) {
  ExperimentConfig c("fig4");
  c.set("fig.etas", "0.1, 0.2");
  c.set("seed", "7");
  const ExperimentConfig back = ExperimentConfig::parse(c.serialize());
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.get_doubles("fig.etas"), (std::vector<double>{0.1, 0.2}));
}

TEST(Config, ParsesCommentsAndBlankLines) {
  const ExperimentConfig c = ExperimentConfig::parse(
      "# run\nschema_version = 1\n\nexperiment = table2   # ii\ntransfer.window = 4\n");
  EXPECT_EQ(c.experiment(), "table2");
  EXPECT_DOUBLE_EQ(c.get_double("transfer.window"), 4.0);
}

TEST(Config, RejectsUnknownKey) {
  EXPECT_THROW(ExperimentConfig::parse("schema_version = 1\nexperiment = table1\nbogus = 3\n"), ConfigError);
  ExperimentConfig c;
  EXPECT_THROW(c.set("bogus", "1"), ConfigError);
  EXPECT_THROW(c.get_string("bogus"), ConfigError);
}

TEST(Config, RejectsBadValues) {
  ExperimentConfig c;
  EXPECT_THROW(c.set("seed", "abc"), ConfigError);
  EXPECT_THROW(c.set("fig.duration", "1.5x"), ConfigError);
  EXPECT_THROW(c.set("strict", "maybe"), ConfigError);
  EXPECT_NO_THROW(c.set("strict", "on"));
  EXPECT_TRUE(c.get_bool("strict"));
}

TEST(Config, SchemaVersionRequired) {
  EXPECT_THROW(ExperimentConfig::parse("experiment = table1\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::parse("schema_version = 2\nexperiment = table1\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::parse("schema_version = 1\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::parse("schema_version = 1\nexperiment = table1\nseed = 1\nseed = 2\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::parse("schema_version = 1\nexperiment table1\n"), ConfigError);
}

TEST(Config, LoadFromFile) {
  const std::string path = ::testing::TempDir() + "motsim_config_test.cfg";
  {
    std::ofstream f(path);
    f << "schema_version = 1\nexperiment = cascade_ideal\ncascade.windows = 8\n";
  }
  const ExperimentConfig c = ExperimentConfig::load(path);
  EXPECT_EQ(c.get_doubles("cascade.windows"), (std::vector<double>{8.0}));
  std::remove(path.c_str());
  EXPECT_THROW(ExperimentConfig::load(path), ConfigError);
}
