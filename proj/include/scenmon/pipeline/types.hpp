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

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "scenmon/params.hpp"
#include "scenmon/road.hpp"
#include "scenmon/trace.hpp"

namespace scenmon
{

/// Parameters that shape the filtered trace set. A trace directory records
/// them so that evaluation can refuse a mismatching configuration.
struct PipelineParams
{
  RssParams rss;
  ScenarioParams scenario;
  InterpolationMode mode = InterpolationMode::kStepHold;
  AngleConvention angle = AngleConvention::kPathAligned;
  double frame_rate_hz = 25.0;
  bool cars_only = true;
  bool three_vehicle = false;

  void validate() const;
  bool operator==(const PipelineParams &) const = default;
};

const char * to_string(InterpolationMode mode);
InterpolationMode interpolation_from_string(const std::string & text);
const char * to_string(AngleConvention angle);
AngleConvention angle_from_string(const std::string & text);

/// A trimmed SV/POV trace that passed the dangerArises filter.
struct DisturbTrace
{
  std::string name;
  std::string recording;
  int direction = 0;
  VehicleId sv;
  VehicleId pov;
  /// Vehicles that may play POV1 in the three-vehicle cut-out scenario.
  std::vector<VehicleId> pov1_candidates;
  std::string map_name;
  std::shared_ptr<const Trace> trace;
  std::shared_ptr<const RoadNetwork> road;
};

struct FilterStats
{
  std::size_t recordings = 0;
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
  std::size_t pairs_scanned = 0;
  std::size_t pairs_violating = 0;
  std::size_t pairs_kept = 0;

  FilterStats & operator+=(const FilterStats & other);
  bool operator==(const FilterStats &) const = default;
};

}  // namespace scenmon
