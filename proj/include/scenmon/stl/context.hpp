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

#include <map>
#include <memory>
#include <string>

#include "scenmon/params.hpp"
#include "scenmon/road.hpp"
#include "scenmon/trace.hpp"

namespace scenmon::stl
{

/// Everything an atom needs to evaluate: the trace, the road, name bindings
/// (formula name -> vehicle id or lane id) and calibration parameters.
struct EvalContext
{
  std::shared_ptr<const Trace> trace;
  std::shared_ptr<const RoadNetwork> road;
  std::map<std::string, std::string> bindings;
  RssParams rss;
  ScenarioParams scenario;
  InterpolationMode mode = InterpolationMode::kStepHold;
  AngleConvention angle = AngleConvention::kPathAligned;

  /// Resolves a formula name to a vehicle id: explicit binding first, then a
  /// vehicle of that id in the trace. Throws UnboundName.
  VehicleId resolve_vehicle(const std::string & name) const;

  /// Same for lanes, checked against the road network.
  LaneId resolve_lane(const std::string & name) const;
};

}  // namespace scenmon::stl
