// Copyright 2026 The scenmon Authors. All rights reserved.
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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "scenmon/pipeline/types.hpp"
#include "scenmon/scenarios.hpp"

namespace scenmon
{

struct RunConfig
{
  PipelineParams params;
  std::vector<SpecVariant> spec_sets = {SpecVariant::kBase, SpecVariant::kExtA, SpecVariant::kExt};
  std::vector<int> scenarios;  ///< empty: default_indices(params.three_vehicle)
  std::uint64_t seed = 0;
  unsigned jobs = 0;  ///< 0: hardware concurrency
  std::string data_dir;
  std::string output_dir;
  std::string trace_dir;
  std::string map_file;

  std::vector<int> scenario_indices() const;
  void validate() const;
};

/// Keys accepted in config files and as same-named flags.
const std::vector<std::string> & config_keys();

/// Parses `key = value` lines; '#' starts a comment. Throws ConfigError
/// naming the line on malformed input or unknown keys.
std::vector<std::pair<std::string, std::string>> parse_config(std::istream & in);

/// Throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig & config, const std::string & key, const std::string & value);

RunConfig load_config(const std::string & path);

}  // namespace scenmon
