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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scenmon/params.hpp"
#include "scenmon/road.hpp"
#include "scenmon/stl/formula.hpp"
#include "scenmon/trace.hpp"

namespace scenmon::stl
{

struct ChannelBounds
{
  double lo = 0.0;
  double hi = 0.0;
};

struct VehicleTemplate
{
  VehicleId id;
  VehicleDims dims;
  ChannelBounds s{0.0, 200.0};
  ChannelBounds v{0.0, 40.0};
  ChannelBounds a{-5.0, 5.0};
  ChannelBounds d{0.0, 10.5};
  ChannelBounds theta{0.0, 0.0};
};

/// Shape of the signals to search over. Each channel of each vehicle is a
/// piecewise-linear function through `control_points` evenly spaced values,
/// sampled every `dt` seconds over [0, duration].
struct SignalTemplate
{
  std::vector<VehicleTemplate> vehicles;
  double duration = 10.0;
  double dt = 0.25;
  int control_points = 6;
  std::shared_ptr<const RoadNetwork> road;  ///< defaults to a straight 3-lane road
  std::map<std::string, std::string> bindings;
  RssParams rss;
  ScenarioParams scenario;

  /// Throws InvalidTemplate for empty bounds or a degenerate grid.
  void validate() const;
};

struct ExemplifyOptions
{
  int restarts = 20;
  int steps = 200;
  std::uint64_t seed = 0;
  double time_limit_s = 0.0;  ///< wall-clock budget; 0 means none
};

struct ExemplifyResult
{
  bool success = false;
  std::optional<Trace> trace;  ///< set on success; eval_bool at 0 is true
  double robustness = -kInfinity;  ///< best robustness at time 0 seen
  int evaluations = 0;
  bool timed_out = false;
};

/// Searches for a trace satisfying the formula at time 0: random restarts,
/// each followed by coordinate hill-climbing on robustness with per-coordinate
/// steps halved after a failed move. Failure does not prove the formula
/// unsatisfiable.
ExemplifyResult exemplify(
  const Formula & formula, const SignalTemplate & tmpl, const ExemplifyOptions & options = {});

}  // namespace scenmon::stl
