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

#include "scenmon/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "scenmon/errors.hpp"
#include "scenmon/pipeline/pipeline.hpp"

namespace scenmon
{

std::vector<int> RunConfig::scenario_indices() const
{
  return scenarios.empty() ? default_indices(params.three_vehicle) : scenarios;
}

void RunConfig::validate() const
{
  params.validate();
  if (spec_sets.empty()) {
    throw ConfigError("spec_set selects nothing");
  }
  SpecSet{SpecVariant::kBase, scenario_indices()}.validate();
}

const std::vector<std::string> & config_keys()
{
  static const std::vector<std::string> keys = {"rss.rho", "rss.a_max", "rss.b_min", "rss.b_max",
    "rss.a_max_lat", "rss.b_min_lat", "scenario.min_danger", "scenario.min_safe", "spec_set",
    "scenarios", "interpolation", "angle_convention", "frame_rate_hz", "cars_only",
    "three_vehicle", "seed", "jobs", "data_dir", "output_dir", "trace_dir", "map_file"};
  return keys;
}

namespace
{

std::string trim(const std::string & s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string & key, const std::string & value)
{
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  return x;
}

std::uint64_t to_unsigned(const std::string & key, const std::string & value)
{
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  return x;
}

bool to_bool(const std::string & key, const std::string & value)
{
  if (value == "true" || value == "1" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off") {
    return false;
  }
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string & value)
{
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config(std::istream & in)
{
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t row = 0;
  const auto & keys = config_keys();
  while (std::getline(in, line)) {
    ++row;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(row) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("config line " + std::to_string(row) + ": unknown key '" + key + "'");
    }
    out.emplace_back(key, value);
  }
  return out;
}

void apply_setting(RunConfig & c, const std::string & key, const std::string & value)
{
  PipelineParams & p = c.params;
  if (key == "rss.rho") {
    p.rss.rho = to_double(key, value);
  } else if (key == "rss.a_max") {
    p.rss.a_max = to_double(key, value);
  } else if (key == "rss.b_min") {
    p.rss.b_min = to_double(key, value);
  } else if (key == "rss.b_max") {
    p.rss.b_max = to_double(key, value);
  } else if (key == "rss.a_max_lat") {
    p.rss.a_max_lat = to_double(key, value);
  } else if (key == "rss.b_min_lat") {
    p.rss.b_min_lat = to_double(key, value);
  } else if (key == "scenario.min_danger") {
    p.scenario.min_danger = to_double(key, value);
  } else if (key == "scenario.min_safe") {
    p.scenario.min_safe = to_double(key, value);
  } else if (key == "spec_set") {
    c.spec_sets.clear();
    for (const std::string & item : split_list(value)) {
      if (item == "all") {
        c.spec_sets = {SpecVariant::kBase, SpecVariant::kExtA, SpecVariant::kExt};
        continue;
      }
      c.spec_sets.push_back(variant_from_string(item));
    }
  } else if (key == "scenarios") {
    c.scenarios.clear();
    for (const std::string & item : split_list(value)) {
      c.scenarios.push_back(static_cast<int>(to_unsigned(key, item)));
    }
  } else if (key == "interpolation") {
    p.mode = interpolation_from_string(value);
  } else if (key == "angle_convention") {
    p.angle = angle_from_string(value);
  } else if (key == "frame_rate_hz") {
    p.frame_rate_hz = to_double(key, value);
  } else if (key == "cars_only") {
    p.cars_only = to_bool(key, value);
  } else if (key == "three_vehicle") {
    p.three_vehicle = to_bool(key, value);
  } else if (key == "seed") {
    c.seed = to_unsigned(key, value);
  } else if (key == "jobs") {
    c.jobs = static_cast<unsigned>(to_unsigned(key, value));
  } else if (key == "data_dir") {
    c.data_dir = value;
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "trace_dir") {
    c.trace_dir = value;
  } else if (key == "map_file") {
    c.map_file = value;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig load_config(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  RunConfig c;
  for (const auto & [key, value] : parse_config(in)) {
    apply_setting(c, key, value);
  }
  return c;
}

}  // namespace scenmon
